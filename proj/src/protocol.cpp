#include "fdrs/protocol.hpp"

#include <algorithm>
#include <cctype>

namespace fdrs {

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::MHDF_NDL: return "NDL";
    case Protocol::MHDF_IDL: return "IDL";
    case Protocol::MHDF_IDL_DT: return "IDL/DT";
    case Protocol::SDF: return "SDF";
    case Protocol::HD_MRC: return "HD-MRC";
    case Protocol::HD_SDF: return "HD-SDF";
  }
  return "?";
}

std::optional<Protocol> parse_protocol(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '/' || c == ' ') c = '_';
    key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (key.rfind("MHDF_", 0) == 0) key.erase(0, 5);
  if (key == "NDL") return Protocol::MHDF_NDL;
  if (key == "IDL") return Protocol::MHDF_IDL;
  if (key == "IDL_DT") return Protocol::MHDF_IDL_DT;
  if (key == "SDF") return Protocol::SDF;
  if (key == "HD_MRC") return Protocol::HD_MRC;
  if (key == "HD_SDF") return Protocol::HD_SDF;
  return std::nullopt;
}

}  // namespace fdrs
