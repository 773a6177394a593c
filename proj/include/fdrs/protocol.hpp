#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace fdrs {

/// Relay-selection protocol. The half-duplex baselines are simulation-only.
enum class Protocol { MHDF_NDL, MHDF_IDL, MHDF_IDL_DT, SDF, HD_MRC, HD_SDF };

inline constexpr std::array<Protocol, 4> kFullDuplexProtocols{
    Protocol::MHDF_NDL, Protocol::MHDF_IDL, Protocol::MHDF_IDL_DT, Protocol::SDF};

constexpr bool is_half_duplex(Protocol p) {
  return p == Protocol::HD_MRC || p == Protocol::HD_SDF;
}

/// The destination may fall back to the direct source signal alone.
constexpr bool allows_direct_transmission(Protocol p) {
  return p == Protocol::MHDF_IDL_DT || p == Protocol::SDF || p == Protocol::HD_SDF;
}

constexpr bool needs_direct_link(Protocol p) { return p != Protocol::MHDF_NDL; }

/// Display name, also accepted by `parse_protocol`.
std::string_view to_string(Protocol p);

/// Case-insensitive; accepts e.g. "ndl", "MHDF_IDL", "idl/dt", "idl_dt", "hd-mrc".
std::optional<Protocol> parse_protocol(std::string_view name);

}  // namespace fdrs
