#include "floodrisk/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <functional>
#include <map>

#include "csv.hpp"
#include "floodrisk/error.hpp"

namespace floodrisk::config {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

std::vector<double> parse_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(", "), boost::token_compress_on);
  std::vector<double> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (p.empty()) continue;
    double v = 0.0;
    if (!detail::parse_double(p, v)) throw InputError("not a number: '" + p + "'");
    out.push_back(v);
  }
  return out;
}

VasicekPair<double> default_rates() {
  VasicekPair<double> p;
  p.rate = {1.52, 0.0412, 0.014, 0.0228};
  p.reference = {0.04, 0.0202, 0.04, 0.0243};
  p.correlation = 0.89;
  return p;
}

Config defaults() {
  Config c;
  c.rates = default_rates();
  return c;
}

namespace {

double number(const std::string& key, const std::string& text) {
  double v = 0.0;
  if (!detail::parse_double(boost::trim_copy(text), v)) throw InputError(key + ": not a number: '" + text + "'");
  return v;
}

std::int64_t integer(const std::string& key, const std::string& text) {
  const double v = number(key, text);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) throw InputError(key + ": expected an integer, got '" + text + "'");
  return static_cast<std::int64_t>(v);
}

std::vector<double> list(const std::string& key, const std::string& text) {
  try {
    return parse_list(text);
  } catch (const InputError& e) {
    throw InputError(key + ": " + e.what());
  }
}

std::vector<catbond::TriggerLayer> layers(const std::string& key, const std::string& text) {
  std::vector<std::string> items;
  boost::split(items, text, boost::is_any_of(","), boost::token_compress_on);
  std::vector<catbond::TriggerLayer> out;
  for (auto& item : items) {
    boost::trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError(key + ": expected threshold:fraction, got '" + item + "'");
    out.push_back({number(key, item.substr(0, colon)), number(key, item.substr(colon + 1))});
  }
  return out;
}

template <typename E>
E choose(const std::string& key, const std::string& text, const std::map<std::string, E>& options) {
  const auto it = options.find(boost::to_lower_copy(boost::trim_copy(text)));
  if (it != options.end()) return it->second;
  std::string names;
  for (const auto& [name, _] : options) names += (names.empty() ? "" : ", ") + name;
  throw InputError(key + ": '" + text + "' is not one of " + names);
}

using Setter = std::function<void(Config&, const std::string&, const fs::path&)>;

fs::path resolve(const std::string& text, const fs::path& base) {
  fs::path p(boost::trim_copy(text));
  return p.is_relative() ? base / p : p;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"data.losses", [](Config& c, const std::string& v, const fs::path& b) { c.data.losses = resolve(v, b); }},
      {"data.cpi", [](Config& c, const std::string& v, const fs::path& b) { c.data.cpi = resolve(v, b); }},
      {"data.indicators", [](Config& c, const std::string& v, const fs::path& b) { c.data.indicators = resolve(v, b); }},
      {"data.counts", [](Config& c, const std::string& v, const fs::path& b) { c.data.counts = resolve(v, b); }},
      {"data.reference", [](Config& c, const std::string& v, const fs::path& b) { c.data.reference = resolve(v, b); }},
      {"data.base_year", [](Config& c, const std::string& v, const fs::path&) { c.data.base_year = static_cast<int>(integer("data.base_year", v)); }},
      {"run.seed", [](Config& c, const std::string& v, const fs::path&) {
         const auto s = integer("run.seed", v);
         if (s < 0) throw InputError("run.seed: must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"threshold.policy", [](Config& c, const std::string& v, const fs::path&) {
         c.threshold.policy = choose<ThresholdPolicy>("threshold.policy", v, {{"quantile", ThresholdPolicy::Quantile}, {"absolute", ThresholdPolicy::Absolute}});
       }},
      {"threshold.value", [](Config& c, const std::string& v, const fs::path&) { c.threshold.value = number("threshold.value", v); }},
      {"threshold.grid_lo", [](Config& c, const std::string& v, const fs::path&) { c.threshold.grid_lo = number("threshold.grid_lo", v); }},
      {"threshold.grid_hi", [](Config& c, const std::string& v, const fs::path&) { c.threshold.grid_hi = number("threshold.grid_hi", v); }},
      {"threshold.grid_points", [](Config& c, const std::string& v, const fs::path&) { c.threshold.grid_points = static_cast<int>(integer("threshold.grid_points", v)); }},
      {"fit.model", [](Config& c, const std::string& v, const fs::path&) {
         c.fit.model = choose<TailBasis>("fit.model", v, {{"pp", TailBasis::PointProcess}, {"gpd", TailBasis::Gpd}, {"exp", TailBasis::Exponential}});
       }},
      {"fit.span", [](Config& c, const std::string& v, const fs::path&) { c.fit.span = boost::trim_copy(v); }},
      {"fit.bootstrap", [](Config& c, const std::string& v, const fs::path&) { c.fit.bootstrap = static_cast<int>(integer("fit.bootstrap", v)); }},
      {"risk.levels", [](Config& c, const std::string& v, const fs::path&) { c.risk.levels = list("risk.levels", v); }},
      {"risk.compensation_levels", [](Config& c, const std::string& v, const fs::path&) { c.risk.compensation_levels = list("risk.compensation_levels", v); }},
      {"rank.method", [](Config& c, const std::string& v, const fs::path&) {
         c.rank.method = choose<mcdm::Method>("rank.method", v, {{"gra", mcdm::Method::GRA}, {"topsis", mcdm::Method::TOPSIS}});
       }},
      {"rank.weights", [](Config& c, const std::string& v, const fs::path&) {
         const auto w = boost::to_lower_copy(boost::trim_copy(v));
         if (w == "equal") {
           c.rank.weights = WeightScheme::Equal;
         } else if (w == "entropy") {
           c.rank.weights = WeightScheme::Entropy;
         } else {
           c.rank.weights = WeightScheme::Explicit;
           c.rank.explicit_weights = list("rank.weights", v);
         }
       }},
      {"rank.criteria", [](Config& c, const std::string& v, const fs::path&) {
         c.rank.criteria.clear();
         for (double x : list("rank.criteria", v)) c.rank.criteria.push_back(static_cast<int>(integer("rank.criteria", std::to_string(x))));
       }},
      {"rank.zeta", [](Config& c, const std::string& v, const fs::path&) { c.rank.zeta = number("rank.zeta", v); }},
      {"rank.shift", [](Config& c, const std::string& v, const fs::path&) { c.rank.shift = number("rank.shift", v); }},
      {"rank.breaks", [](Config& c, const std::string& v, const fs::path&) {
         c.rank.breaks.clear();
         for (double x : list("rank.breaks", v)) c.rank.breaks.push_back(static_cast<int>(x));
       }},
      {"bond.face", [](Config& c, const std::string& v, const fs::path&) { c.bond.face = number("bond.face", v); }},
      {"bond.maturity", [](Config& c, const std::string& v, const fs::path&) { c.bond.maturity = number("bond.maturity", v); }},
      {"bond.coupon_interval", [](Config& c, const std::string& v, const fs::path&) { c.bond.coupon_interval = number("bond.coupon_interval", v); }},
      {"bond.spread", [](Config& c, const std::string& v, const fs::path&) { c.bond.spread = number("bond.spread", v); }},
      {"trigger.layers", [](Config& c, const std::string& v, const fs::path&) { c.trigger.layers = layers("trigger.layers", v); }},
      {"trigger.rate", [](Config& c, const std::string& v, const fs::path&) { c.trigger.rate = number("trigger.rate", v); }},
      {"trigger.threshold", [](Config& c, const std::string& v, const fs::path&) { c.trigger.severity.threshold = number("trigger.threshold", v); }},
      {"trigger.scale", [](Config& c, const std::string& v, const fs::path&) { c.trigger.severity.scale = number("trigger.scale", v); }},
      {"trigger.shape", [](Config& c, const std::string& v, const fs::path&) { c.trigger.severity.shape = number("trigger.shape", v); }},
      {"rates.a_r", [](Config& c, const std::string& v, const fs::path&) { c.rates.rate.speed = number("rates.a_r", v); }},
      {"rates.b_r", [](Config& c, const std::string& v, const fs::path&) { c.rates.rate.mean = number("rates.b_r", v); }},
      {"rates.sigma_r", [](Config& c, const std::string& v, const fs::path&) { c.rates.rate.vol = number("rates.sigma_r", v); }},
      {"rates.r0", [](Config& c, const std::string& v, const fs::path&) { c.rates.rate.initial = number("rates.r0", v); }},
      {"rates.a_l", [](Config& c, const std::string& v, const fs::path&) { c.rates.reference.speed = number("rates.a_l", v); }},
      {"rates.b_l", [](Config& c, const std::string& v, const fs::path&) { c.rates.reference.mean = number("rates.b_l", v); }},
      {"rates.sigma_l", [](Config& c, const std::string& v, const fs::path&) { c.rates.reference.vol = number("rates.sigma_l", v); }},
      {"rates.l0", [](Config& c, const std::string& v, const fs::path&) { c.rates.reference.initial = number("rates.l0", v); }},
      {"rates.rho", [](Config& c, const std::string& v, const fs::path&) { c.rates.correlation = number("rates.rho", v); }},
      {"pricing.kappa", [](Config& c, const std::string& v, const fs::path&) { c.pricing.kappa = number("pricing.kappa", v); }},
      {"pricing.paths", [](Config& c, const std::string& v, const fs::path&) { c.pricing.paths = integer("pricing.paths", v); }},
      {"pricing.workers", [](Config& c, const std::string& v, const fs::path&) { c.pricing.workers = static_cast<int>(integer("pricing.workers", v)); }},
      {"pricing.block_size", [](Config& c, const std::string& v, const fs::path&) { c.pricing.block_size = integer("pricing.block_size", v); }},
      {"sweep.parameter", [](Config& c, const std::string& v, const fs::path&) {
         c.sweep.parameter = choose<catbond::SweepParameter>("sweep.parameter", v, {{"kappa", catbond::SweepParameter::Kappa}, {"shape", catbond::SweepParameter::Shape}});
       }},
      {"sweep.grid", [](Config& c, const std::string& v, const fs::path&) { c.sweep.grid = list("sweep.grid", v); }},
      {"sweep.scale_to_shape", [](Config& c, const std::string& v, const fs::path&) { c.sweep.scale_to_shape = number("sweep.scale_to_shape", v); }},
      {"calibrate.target", [](Config& c, const std::string& v, const fs::path&) { c.calibrate.target = number("calibrate.target", v); }},
      {"calibrate.lo", [](Config& c, const std::string& v, const fs::path&) { c.calibrate.bracket.lo = number("calibrate.lo", v); }},
      {"calibrate.hi", [](Config& c, const std::string& v, const fs::path&) { c.calibrate.bracket.hi = number("calibrate.hi", v); }},
      {"calibrate.tolerance", [](Config& c, const std::string& v, const fs::path&) { c.calibrate.tolerance = number("calibrate.tolerance", v); }},
      {"calibrate.max_iterations", [](Config& c, const std::string& v, const fs::path&) { c.calibrate.max_iterations = static_cast<int>(integer("calibrate.max_iterations", v)); }},
  };
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

}  // namespace

Config load(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw InputError("config file not found: " + path.string());
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  Config cfg = defaults();
  cfg.source = path;
  const fs::path base = path.parent_path();
  for (const auto& [section, keys] : tree) {
    if (keys.empty() && !keys.data().empty()) throw InputError("config: key '" + section + "' outside any section");
    for (const auto& [key, value] : keys) {
      const std::string name = section + "." + key;
      const auto it = setters().find(name);
      if (it == setters().end()) throw InputError("config: unknown key '" + name + "' in " + path.string());
      it->second(cfg, value.data(), base);
    }
  }
  return cfg;
}

void validate(const Config& c, const std::vector<std::string>& needs) {
  const std::map<std::string, const fs::path*> files = {
      {"losses", &c.data.losses}, {"cpi", &c.data.cpi}, {"indicators", &c.data.indicators}, {"counts", &c.data.counts},
      {"reference", &c.data.reference}};
  for (const auto& need : needs) {
    const auto it = files.find(need);
    if (it != files.end()) require(!it->second->empty(), "config: data." + need + " is required for this command");
  }
  for (const auto& [name, file] : files)
    if (!file->empty()) require(fs::is_regular_file(*file), "input file not found: " + file->string());

  if (c.threshold.policy == ThresholdPolicy::Quantile)
    require(c.threshold.value > 0.0 && c.threshold.value < 1.0, "threshold.value: quantile must lie in (0, 1)");
  require(c.threshold.grid_lo >= 0.0 && c.threshold.grid_lo < c.threshold.grid_hi && c.threshold.grid_hi < 1.0,
          "threshold grid: need 0 <= grid_lo < grid_hi < 1");
  require(c.threshold.grid_points >= 2, "threshold.grid_points: need at least 2");
  if (c.fit.span != "daily") {
    try {
      require(number("fit.span", c.fit.span) > 0.0, "fit.span: must be 'daily' or a positive number");
    } catch (const InputError&) {
      throw InputError("fit.span: must be 'daily' or a positive number");
    }
  }
  require(c.fit.bootstrap >= 0, "fit.bootstrap: must be >= 0");

  for (double q : c.risk.levels) require(q > 0.0 && q < 1.0, "risk.levels: levels must lie in (0, 1)");
  require(!c.risk.compensation_levels.empty() && c.risk.compensation_levels.size() <= 4,
          "risk.compensation_levels: need one to four levels");
  for (std::size_t i = 0; i < c.risk.compensation_levels.size(); ++i) {
    require(c.risk.compensation_levels[i] > 0.0 && c.risk.compensation_levels[i] < 1.0,
            "risk.compensation_levels: levels must lie in (0, 1)");
    if (i > 0)
      require(c.risk.compensation_levels[i] > c.risk.compensation_levels[i - 1],
              "risk.compensation_levels: levels must be increasing");
  }

  require(c.rank.zeta > 0.0 && c.rank.zeta <= 1.0, "rank.zeta: must lie in (0, 1]");
  require(c.rank.shift > 0.0, "rank.shift: must be positive");
  for (int j : c.rank.criteria) require(j >= 1 && j <= 13, "rank.criteria: criterion numbers run from 1 to 13");
  if (c.rank.weights == WeightScheme::Explicit) {
    const std::size_t k = c.rank.criteria.empty() ? 13 : c.rank.criteria.size();
    require(c.rank.explicit_weights.size() == k, "rank.weights: expected " + std::to_string(k) + " weights");
  }
  require(!c.rank.breaks.empty(), "rank.breaks: at least one break");

  try {
    c.bond.validate();
    c.trigger.validate();
    c.rates.validate();
  } catch (const DomainError& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  require(c.pricing.paths >= 1, "pricing.paths: must be >= 1");
  require(c.pricing.workers >= 1, "pricing.workers: must be >= 1");
  require(c.pricing.block_size >= 1, "pricing.block_size: must be >= 1");
  require(!c.sweep.grid.empty(), "sweep.grid: must not be empty");
  require(c.calibrate.bracket.lo < c.calibrate.bracket.hi, "calibrate: need lo < hi");
  require(c.calibrate.tolerance > 0.0, "calibrate.tolerance: must be positive");
  require(c.calibrate.max_iterations >= 1, "calibrate.max_iterations: must be >= 1");
}

}  // namespace floodrisk::config
