#pragma once

// Scenario files.
//
//   # two-hop setup, three relays
//   [links]
//   m_sr = 2
//   pi_sr_db = 15
//   ...
//   [powers]
//   k = 3
//   p_s_db = 0
//   p_r_db = 0
//   lambda = 1
//   [cognitive]
//   m_sp = 1
//   pi_sp_db = 0
//   m_rp = 1
//   pi_rp_db = 1
//   ith_db = 3
//
// Optional [relay.N] sections (N = 1..K) override m/pi of sr, rd, rr, rp for
// one relay; they are accepted by the simulator only.

#include <string>
#include <string_view>
#include <vector>

#include "fdrs/channel.hpp"

namespace fdrs::config {

/// Parses `text`; `source` names it in error messages. `overrides` are
/// `key=value` or `section.key=value` assignments applied after the file.
/// Throws ConfigError listing every problem, each prefixed `source:line:`.
NetworkConfig parse_text(std::string_view text, const std::string& source = "<config>",
                         const std::vector<std::string>& overrides = {});

/// Reads and parses a file.
NetworkConfig parse_file(const std::string& path, const std::vector<std::string>& overrides = {});

/// Canonical linear-domain dump, used for digests. Not a config file.
std::string canonical(const NetworkConfig& cfg);

/// 64-bit FNV-1a of `canonical(cfg)`, as 16 hex digits.
std::string digest(const NetworkConfig& cfg);

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_number(double v);

}  // namespace fdrs::config
