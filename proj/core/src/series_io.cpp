#include <sstream>

#include "json.hpp"
#include "twfock/series.hpp"

namespace twfock {

std::string to_json(const Series& s) {
  using nlohmann::ordered_json;
  const TruncationProfile& p = s.profile();
  ordered_json profile;
  profile["base"] = p.base;
  profile["q_max"] = p.q_max;
  ordered_json bands = ordered_json::object();
  for (const auto& v : p.t_vars) bands[v.name] = v.band;
  profile["t_band"] = bands;
  profile["z_max"] = p.z_max;

  ordered_json terms = ordered_json::array();
  for (const auto& [key, c] : s.terms()) {
    ordered_json e;
    e[p.base] = key.q;
    for (std::size_t i = 0; i < p.t_vars.size(); ++i) e[p.t_vars[i].name] = key.t[i];
    e["z"] = key.z;
    terms.push_back({{"exponents", e},
                     {"num", c.get_num().get_str()},
                     {"den", c.get_den().get_str()}});
  }
  ordered_json out;
  out["profile"] = profile;
  out["terms"] = terms;
  if (s.masked()) {
    ordered_json mask = ordered_json::array();
    for (const auto& c : s.mask()) {
      ordered_json coeff = ordered_json::object();
      for (std::size_t i = 0; i < p.t_vars.size(); ++i) coeff[p.t_vars[i].name] = c.coeff[i];
      mask.push_back({{"bound", c.bound}, {"coeff", coeff}});
    }
    out["mask"] = mask;
  }
  return out.dump(2);
}

std::string to_csv(const Series& s) {
  const TruncationProfile& p = s.profile();
  std::ostringstream os;
  os << p.base;
  for (const auto& v : p.t_vars) os << ',' << v.name;
  os << ",z,num,den\n";
  for (const auto& [key, c] : s.terms()) {
    os << key.q;
    for (std::size_t i = 0; i < p.t_vars.size(); ++i) os << ',' << key.t[i];
    os << ',' << key.z << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
  }
  return os.str();
}

}  // namespace twfock
