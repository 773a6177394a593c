#include "fdrs/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "fdrs/error.hpp"

namespace fdrs::config {

namespace {

struct Entry {
  std::string value;
  std::string where;  // "source:line" or "--set"
};

using Section = std::map<std::string, Entry>;

constexpr std::array<std::string_view, 8> kLinkKeys{"m_sr", "pi_sr_db", "m_rd", "pi_rd_db",
                                                    "m_rr", "pi_rr_db", "m_sd", "pi_sd_db"};
constexpr std::array<std::string_view, 4> kPowerKeys{"k", "p_s_db", "p_r_db", "lambda"};
constexpr std::array<std::string_view, 5> kCognitiveKeys{"m_sp", "pi_sp_db", "m_rp", "pi_rp_db",
                                                         "ith_db"};
constexpr std::array<std::string_view, 8> kRelayKeys{"m_sr", "pi_sr_db", "m_rd", "pi_rd_db",
                                                     "m_rr", "pi_rr_db", "m_rp", "pi_rp_db"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& keys, std::string_view k) {
  return std::find(keys.begin(), keys.end(), k) != keys.end();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Relay index of a "relay.N" section name, or 0.
int relay_index(std::string_view section) {
  constexpr std::string_view prefix = "relay.";
  if (section.substr(0, prefix.size()) != prefix) return 0;
  const std::string_view digits = section.substr(prefix.size());
  int n = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || n < 1) return 0;
  return n;
}

bool key_allowed(const std::string& section, std::string_view key) {
  if (section == "links") return contains(kLinkKeys, key);
  if (section == "powers") return contains(kPowerKeys, key);
  if (section == "cognitive") return contains(kCognitiveKeys, key);
  if (relay_index(section) > 0) return contains(kRelayKeys, key);
  return false;
}

std::optional<std::string> home_section(std::string_view key) {
  if (contains(kLinkKeys, key)) return "links";
  if (contains(kPowerKeys, key)) return "powers";
  if (contains(kCognitiveKeys, key)) return "cognitive";
  return std::nullopt;
}

class Builder {
 public:
  explicit Builder(std::string source) : source_(std::move(source)) {}

  void read(std::string_view text) {
    std::string section;
    int line_no = 0;
    while (!text.empty()) {
      const auto nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      const std::string where = source_ + ":" + std::to_string(line_no);
      if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          error(where, "unterminated section header");
          continue;
        }
        section = lower(trim(line.substr(1, line.size() - 2)));
        if (section != "links" && section != "powers" && section != "cognitive" &&
            relay_index(section) == 0) {
          error(where, "unknown section [" + section + "]");
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        error(where, "expected key = value");
        continue;
      }
      const std::string key = lower(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (section.empty()) {
        error(where, key + ": appears before any section header");
        continue;
      }
      assign(section, key, value, where, false);
    }
  }

  void apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
      error("--set", "'" + assignment + "': expected key=value");
      return;
    }
    std::string key = lower(trim(std::string_view(assignment).substr(0, eq)));
    const std::string value(trim(std::string_view(assignment).substr(eq + 1)));
    std::string section;
    if (const auto dot = key.rfind('.'); dot != std::string::npos) {
      section = key.substr(0, dot);
      key = key.substr(dot + 1);
    } else if (auto home = home_section(key)) {
      section = *home;
    } else {
      error("--set", key + ": unknown key");
      return;
    }
    assign(section, key, value, "--set", true);
  }

  NetworkConfig build() {
    NetworkConfig cfg;
    cfg.sr = link("links", "sr", true).value_or(LinkSpec{});
    cfg.rd = link("links", "rd", true).value_or(LinkSpec{});
    cfg.rr = link("links", "rr", true).value_or(LinkSpec{});
    cfg.sd = link("links", "sd", false);

    if (auto k = number("powers", "k", true)) {
      if (*k != std::round(*k) || *k < 1 || *k > 1000) {
        error(where("powers", "k"), "k: relay count must be an integer in [1, 1000]");
      } else {
        cfg.relays = static_cast<int>(*k);
      }
    }
    if (auto v = number("powers", "p_s_db", true)) cfg.p_s = db_to_linear(*v);
    if (auto v = number("powers", "p_r_db", true)) cfg.p_r = db_to_linear(*v);
    if (auto v = number("powers", "lambda", true)) cfg.lambda = *v;

    cfg.sp = link("cognitive", "sp", false);
    cfg.rp = link("cognitive", "rp", false);
    if (auto v = number("cognitive", "ith_db", false)) cfg.i_th = db_to_linear(*v);

    build_relays(cfg);

    for (const auto& msg : validate_structure(cfg)) error(locate(msg), msg);
    if (!errors_.empty()) throw ConfigError(errors_);
    return cfg;
  }

 private:
  void error(const std::string& where, const std::string& msg) {
    errors_.push_back(where.empty() ? msg : where + ": " + msg);
  }

  void assign(const std::string& section, const std::string& key, const std::string& value,
              const std::string& where, bool replace) {
    if (!key_allowed(section, key)) {
      error(where, key + ": not a valid key in [" + section + "]");
      return;
    }
    auto& sec = sections_[section];
    if (!replace && sec.count(key)) {
      error(where, key + ": duplicate key (first set at " + sec[key].where + ")");
      return;
    }
    sec[key] = Entry{value, where};
  }

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  std::string where(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    return e ? e->where : source_;
  }

  std::optional<double> number(const std::string& section, const std::string& key, bool required) {
    const Entry* e = find(section, key);
    if (!e) {
      if (required) error(source_, key + ": missing from [" + section + "]");
      return std::nullopt;
    }
    double v = 0;
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      error(e->where, key + ": '" + e->value + "' is not a finite number");
      return std::nullopt;
    }
    return v;
  }

  // m_<name> and pi_<name>_db together. Required links must have both; an
  // optional link is absent only when both are.
  std::optional<LinkSpec> link(const std::string& section, const std::string& name,
                               bool required) {
    const std::string mk = "m_" + name;
    const std::string pk = "pi_" + name + "_db";
    const bool has_m = find(section, mk) != nullptr;
    const bool has_p = find(section, pk) != nullptr;
    if (!required && !has_m && !has_p) return std::nullopt;
    if (!required && has_m != has_p) {
      error(where(section, has_m ? mk : pk),
            (has_m ? pk : mk) + ": required together with " + (has_m ? mk : pk));
      return std::nullopt;
    }
    const auto m = number(section, mk, true);
    const auto p = number(section, pk, true);
    if (!m || !p) return required ? std::optional<LinkSpec>() : std::nullopt;
    return LinkSpec{*m, db_to_linear(*p)};
  }

  std::optional<LinkSpec> relay_link(const std::string& section, const std::string& name,
                                     std::optional<LinkSpec> base) {
    const auto m = find(section, "m_" + name) ? number(section, "m_" + name, true) : std::nullopt;
    const auto p =
        find(section, "pi_" + name + "_db") ? number(section, "pi_" + name + "_db", true)
                                            : std::nullopt;
    if (!m && !p) return base;
    LinkSpec out = base.value_or(LinkSpec{1.0, 1.0});
    if (m) out.m = *m;
    if (p) out.avg_power = db_to_linear(*p);
    return out;
  }

  void build_relays(NetworkConfig& cfg) {
    std::vector<std::string> relay_sections;
    for (const auto& [name, entries] : sections_) {
      if (relay_index(name) > 0) relay_sections.push_back(name);
    }
    if (relay_sections.empty()) return;
    cfg.relay_overrides.assign(static_cast<std::size_t>(cfg.relays),
                               RelayLinks{cfg.sr, cfg.rd, cfg.rr, cfg.rp});
    for (const auto& name : relay_sections) {
      const int n = relay_index(name);
      if (n > cfg.relays) {
        error(source_, "[" + name + "]: relay index exceeds k = " + std::to_string(cfg.relays));
        continue;
      }
      RelayLinks& r = cfg.relay_overrides[static_cast<std::size_t>(n - 1)];
      r.sr = *relay_link(name, "sr", r.sr);
      r.rd = *relay_link(name, "rd", r.rd);
      r.rr = *relay_link(name, "rr", r.rr);
      r.rp = relay_link(name, "rp", r.rp);
    }
  }

  // Best-effort source position for a validation message "field: ...".
  std::string locate(const std::string& msg) const {
    const std::string field = msg.substr(0, msg.find(':'));
    for (const char* section : {"links", "powers", "cognitive"}) {
      for (const std::string& key : {field, field + "_db"}) {
        if (const Entry* e = find(section, key)) return e->where;
      }
    }
    return source_;
  }

  std::string source_;
  std::map<std::string, Section> sections_;
  std::vector<std::string> errors_;
};

void put(std::string& out, std::string_view name, double v) {
  out += name;
  out += '=';
  out += format_number(v);
  out += '\n';
}

void put_link(std::string& out, const std::string& name, const LinkSpec& l) {
  put(out, "m_" + name, l.m);
  put(out, "pi_" + name, l.avg_power);
}

}  // namespace

NetworkConfig parse_text(std::string_view text, const std::string& source,
                         const std::vector<std::string>& overrides) {
  Builder b(source);
  b.read(text);
  for (const auto& o : overrides) b.apply_override(o);
  return b.build();
}

NetworkConfig parse_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path + ": cannot open config file"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path, overrides);
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::string canonical(const NetworkConfig& cfg) {
  std::string out;
  put(out, "k", cfg.relays);
  put(out, "p_s", cfg.p_s);
  put(out, "p_r", cfg.p_r);
  put(out, "lambda", cfg.lambda);
  put_link(out, "sr", cfg.sr);
  put_link(out, "rd", cfg.rd);
  put_link(out, "rr", cfg.rr);
  if (cfg.sd) put_link(out, "sd", *cfg.sd);
  if (cfg.sp) put_link(out, "sp", *cfg.sp);
  if (cfg.rp) put_link(out, "rp", *cfg.rp);
  if (cfg.i_th) put(out, "ith", *cfg.i_th);
  for (std::size_t k = 0; k < cfg.relay_overrides.size(); ++k) {
    const auto& r = cfg.relay_overrides[k];
    const std::string tag = "relay" + std::to_string(k + 1) + "_";
    put_link(out, tag + "sr", r.sr);
    put_link(out, tag + "rd", r.rd);
    put_link(out, tag + "rr", r.rr);
    if (r.rp) put_link(out, tag + "rp", *r.rp);
  }
  return out;
}

std::string digest(const NetworkConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical(cfg)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace fdrs::config
