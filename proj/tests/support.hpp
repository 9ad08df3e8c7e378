#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "logcap/instance.hpp"
#include "logcap/instance_io.hpp"
#include "logcap/lattice.hpp"

namespace testing {

inline std::filesystem::path source_dir() { return LOGCAP_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& name) { return source_dir() / "fixtures" / name; }
inline logcap::Instance load_fixture(const std::string& name) { return logcap::load_instance(fixture(name)); }

/// Every element of prod Z/radix_i, as canonical coordinate vectors.
inline std::vector<logcap::Vec> all_vectors(const std::vector<std::int64_t>& radix) {
  std::vector<logcap::Vec> out{logcap::Vec{}};
  for (auto r : radix) {
    std::vector<logcap::Vec> next;
    for (const auto& v : out)
      for (std::int64_t x = 0; x < r; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

/// Brute-force span: closure of the generators under addition, reduced
/// coordinatewise modulo `radix`.
inline std::set<logcap::Vec> enumerate_span(const std::vector<logcap::Vec>& gens,
                                            const std::vector<std::int64_t>& radix) {
  logcap::Vec zero(radix.size(), 0);
  std::set<logcap::Vec> seen{zero};
  std::vector<logcap::Vec> frontier{zero};
  while (!frontier.empty()) {
    std::vector<logcap::Vec> next;
    for (const auto& v : frontier)
      for (const auto& g : gens) {
        logcap::Vec w(radix.size());
        for (std::size_t i = 0; i < radix.size(); ++i) w[i] = ((v[i] + g[i]) % radix[i] + radix[i]) % radix[i];
        if (seen.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline std::vector<std::int64_t> radix_of(const logcap::Ambient& amb) {
  std::vector<std::int64_t> r;
  for (unsigned e : amb.exponents()) r.push_back(static_cast<std::int64_t>(logcap::ipow(amb.modulus().prime(), e)));
  return r;
}

inline std::set<logcap::Vec> enumerate(const logcap::Ambient& amb, const logcap::Submodule& s) {
  return enumerate_span(s.rows(), radix_of(amb));
}

}  // namespace testing
