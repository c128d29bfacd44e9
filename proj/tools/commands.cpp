#include "commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "floodrisk/catbond.hpp"
#include "floodrisk/config.hpp"
#include "floodrisk/data.hpp"
#include "floodrisk/error.hpp"
#include "floodrisk/evt.hpp"
#include "floodrisk/mcdm.hpp"
#include "floodrisk/risk.hpp"

namespace floodrisk::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchemaVersion = "1.0";

// ---------------------------------------------------------------- output

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  template <typename... Cells>
  void row(const Cells&... cells) {
    std::ostringstream line;
    line << std::setprecision(10);
    bool first = true;
    ((line << (first ? "" : ",") << cells, first = false), ...);
    rows_.push_back(line.str());
  }

  void write(const fs::path& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
    out << '\n';
    for (const auto& r : rows_) out << r << '\n';
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::string> rows_;
};

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json header(const std::string& command) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  return doc;
}

json interval(const evt::Interval& i) { return json::array({i.lo, i.hi}); }

// NaN is not representable in JSON; emit null instead.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json fit_json(const evt::FitResult& fit) {
  json j;
  j["model"] = evt::to_string(fit.model);
  j["threshold"] = fit.threshold;
  j["n_exceedances"] = fit.n_eff;
  json params = json::object();
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    params[fit.names[i]] = {{"estimate", fit.estimates[k]},
                            {"std_error", num(fit.standard_errors[k])},
                            {"ci95", {num(fit.ci95[i].lo), num(fit.ci95[i].hi)}}};
  }
  j["parameters"] = params;
  j["loglik"] = fit.loglik;
  j["aic"] = fit.aic;
  j["bic"] = fit.bic;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  return j;
}

// -------------------------------------------------------------- pipeline

struct LossData {
  std::vector<double> losses;
  std::size_t years = 0;
  double threshold = 0.0;
};

LossData load_losses(const config::Config& cfg) {
  auto records = data::load_loss_csv(cfg.data.losses);
  if (records.empty()) throw DomainError("loss file has no records: " + cfg.data.losses.string());
  if (!cfg.data.cpi.empty()) records = data::normalize_cpi(records, data::load_cpi_csv(cfg.data.cpi), cfg.data.base_year);
  LossData d;
  d.losses = data::losses_of(records);
  const auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                            [](const auto& a, const auto& b) { return a.year < b.year; });
  d.years = static_cast<std::size_t>(hi->year - lo->year + 1);
  d.threshold = cfg.threshold.policy == config::ThresholdPolicy::Quantile
                    ? data::quantile_of(d.losses, cfg.threshold.value)
                    : cfg.threshold.value;
  return d;
}

double span_of(const config::Config& cfg, std::size_t n) {
  if (cfg.fit.span == "daily") return evt::daily_span(n);
  return config::parse_list(cfg.fit.span).at(0);
}

struct Fits {
  evt::ExcessSample sample;
  double span = 1.0;
  evt::FitResult gpd;
  evt::FitResult exp;
  evt::FitResult pp;
  evt::LrTest lr;
  std::optional<evt::PoissonRate> frequency;
};

Fits fit_all(const config::Config& cfg, const LossData& d) {
  Fits f;
  f.sample = evt::make_excess_sample(d.losses, d.threshold);
  f.span = span_of(cfg, d.losses.size());
  f.gpd = evt::fit_gpd(f.sample);
  f.exp = evt::fit_exponential(f.sample);
  f.pp = evt::fit_pp(d.losses, d.threshold, f.span);
  f.lr = evt::lr_test(f.gpd, f.exp, 1);
  if (!cfg.data.counts.empty()) {
    const auto table = data::load_count_csv(cfg.data.counts);
    std::vector<std::int64_t> counts;
    for (const auto& [year, c] : table) counts.push_back(c);
    evt::PoissonGofOptions gof;
    gof.replicates = cfg.fit.bootstrap;
    gof.seed = cfg.seed.value_or(0);
    const auto years = table.empty() ? 0 : static_cast<std::size_t>(table.rbegin()->first - table.begin()->first + 1);
    f.frequency = evt::fit_poisson_frequency(counts, years, gof);
  }
  return f;
}

risk::TailModel tail_model(const config::Config& cfg, const Fits& f, const LossData& d) {
  risk::TailModel m;
  switch (cfg.fit.model) {
    case config::TailBasis::PointProcess: m.gpd = f.pp.gpd(); break;
    case config::TailBasis::Gpd: m.gpd = f.gpd.gpd(); break;
    case config::TailBasis::Exponential: m.gpd = f.exp.gpd(); break;
  }
  m.tail_prob = f.sample.tail_fraction();
  m.rate = f.frequency ? f.frequency->rate : static_cast<double>(f.sample.n_u()) / static_cast<double>(d.years);
  m.validate();
  return m;
}

// 1 - q without the binary noise (0.050000000000000044 and the like)
double significance(double q) { return std::round((1.0 - q) * 1e12) / 1e12; }

std::string level_key(const std::string& measure, double q) {
  std::ostringstream s;
  s << measure << '@' << std::setprecision(6) << q;
  return s.str();
}

json comparison(const config::Config& cfg, const std::map<std::string, double>& ours) {
  json rows = json::array();
  if (cfg.data.reference.empty()) return rows;
  for (const auto& [name, published] : data::load_reference_csv(cfg.data.reference)) {
    json r{{"quantity", name}, {"published", published}};
    const auto it = ours.find(name);
    if (it == ours.end()) {
      r["ours"] = nullptr;
      r["relative_deviation"] = nullptr;
    } else {
      r["ours"] = it->second;
      r["relative_deviation"] = published != 0.0 ? json((it->second - published) / std::abs(published)) : json(nullptr);
    }
    rows.push_back(r);
  }
  return rows;
}

std::map<std::string, double> fit_quantities(const Fits& f) {
  return {{"gpd.scale", f.gpd.estimates[0]}, {"gpd.shape", f.gpd.estimates[1]}, {"gpd.aic", f.gpd.aic},
          {"gpd.bic", f.gpd.bic},           {"exp.scale", f.exp.estimates[0]},  {"exp.aic", f.exp.aic},
          {"pp.location", f.pp.estimates[0]}, {"pp.scale", f.pp.estimates[1]},  {"pp.shape", f.pp.estimates[2]},
          {"pp.aic", f.pp.aic},             {"pp.loglik", f.pp.loglik}};
}

// -------------------------------------------------------------- commands

void prepare_out(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw InputError("cannot create output directory " + out.string());
}

void require_seed(const config::Config& cfg, const std::string& command) {
  if (!cfg.seed) throw InputError(command + ": a seed is required (--seed or [run] seed)");
}

int cmd_diagnose(const config::Config& cfg, const Options& opt) {
  config::validate(cfg, {"losses"});
  prepare_out(opt.out);
  const LossData d = load_losses(cfg);

  std::vector<double> grid;
  const auto& t = cfg.threshold;
  for (int i = 0; i < t.grid_points; ++i)
    grid.push_back(data::quantile_of(d.losses, t.grid_lo + (t.grid_hi - t.grid_lo) * i / (t.grid_points - 1)));

  CsvWriter mrl({"threshold", "n_exceed", "mean_excess", "ci_lo", "ci_hi", "valid", "note"});
  for (const auto& p : evt::mean_residual_life(d.losses, grid))
    mrl.row(p.threshold, p.n_u, p.mean_excess, p.lo, p.hi, p.valid ? 1 : 0, p.note);
  mrl.write(opt.out / "mrl.csv");

  CsvWriter stab({"threshold", "n_exceed", "shape", "shape_lo", "shape_hi", "modified_scale", "modified_scale_lo",
                  "modified_scale_hi", "valid", "note"});
  for (const auto& p : evt::param_stability_scan(d.losses, grid))
    stab.row(p.threshold, p.n_u, p.shape, p.shape_ci.lo, p.shape_ci.hi, p.modified_scale, p.modified_scale_ci.lo,
             p.modified_scale_ci.hi, p.valid ? 1 : 0, p.note);
  stab.write(opt.out / "stability.csv");

  const auto sample = evt::make_excess_sample(d.losses, d.threshold);
  const auto fit = evt::fit_gpd(sample);
  CsvWriter qq({"model", "empirical"});
  for (const auto& p : evt::qq_points(sample.excesses, fit.gpd())) qq.row(p.model, p.empirical);
  qq.write(opt.out / "qq.csv");

  std::cout << "threshold " << d.threshold << ", " << sample.n_u() << " exceedances; wrote mrl.csv, stability.csv, qq.csv\n";
  return 0;
}

int cmd_fit(const config::Config& cfg, const Options& opt) {
  config::validate(cfg, {"losses"});
  if (!cfg.data.counts.empty() && cfg.fit.bootstrap > 0) require_seed(cfg, "fit");
  prepare_out(opt.out);
  const LossData d = load_losses(cfg);
  const Fits f = fit_all(cfg, d);

  if (opt.format == "csv") {
    CsvWriter w({"model", "parameter", "estimate", "std_error", "ci_lo", "ci_hi", "loglik", "aic", "bic"});
    for (const auto* fit : {&f.pp, &f.gpd, &f.exp})
      for (std::size_t i = 0; i < fit->names.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        w.row(evt::to_string(fit->model), fit->names[i], fit->estimates[k], fit->standard_errors[k], fit->ci95[i].lo,
              fit->ci95[i].hi, fit->loglik, fit->aic, fit->bic);
      }
    w.write(opt.out / "fit.csv");
  } else {
    json doc = header("fit");
    doc["n"] = d.losses.size();
    doc["threshold"] = d.threshold;
    doc["span"] = f.span;
    doc["fits"] = json::array({fit_json(f.pp), fit_json(f.gpd), fit_json(f.exp)});
    doc["linked_gpd_scale"] = f.pp.gpd().scale;
    doc["lr_test"] = {{"full", "gpd"}, {"nested", "exponential"}, {"statistic", f.lr.statistic}, {"df", f.lr.df},
                      {"p_value", f.lr.p_value}};
    if (f.frequency) {
      const auto& p = *f.frequency;
      doc["frequency"] = {{"rate", p.rate},
                          {"years", p.years},
                          {"total", p.total},
                          {"ks_statistic", p.ks_statistic},
                          {"bootstrap_p_value", p.gof_pvalue},
                          {"kolmogorov_p_value", p.naive_ks_pvalue},
                          {"replicates", p.bootstrap_replicates},
                          {"seed", cfg.seed.value_or(0)}};
    }
    doc["published_comparison"] = comparison(cfg, fit_quantities(f));
    write_json(opt.out / "fit.json", doc);
  }
  std::cout << "u = " << d.threshold << ": gpd scale " << f.gpd.estimates[0] << " shape " << f.gpd.estimates[1]
            << " aic " << f.gpd.aic << "; pp (" << f.pp.estimates[0] << ", " << f.pp.estimates[1] << ", "
            << f.pp.estimates[2] << ")\n";
  return 0;
}

int cmd_risk(const config::Config& cfg, const Options& opt) {
  config::validate(cfg, {"losses"});
  if (!cfg.data.counts.empty() && cfg.fit.bootstrap > 0) require_seed(cfg, "risk");
  prepare_out(opt.out);
  const LossData d = load_losses(cfg);
  const Fits f = fit_all(cfg, d);
  const risk::TailModel model = tail_model(cfg, f, d);

  std::map<std::string, double> ours = fit_quantities(f);
  std::vector<risk::MeasureRow> measures;
  for (double q : cfg.risk.levels) {
    risk::MeasureRow r{q, risk::value_at_risk(q, model), risk::cvar(q, model)};
    measures.push_back(r);
    ours[level_key("var", q)] = r.var;
    ours[level_key("cvar", q)] = r.cvar;
  }
  const double annual = risk::expected_annual_loss(model);
  ours["annual_loss"] = annual;
  ours["event_mean"] = model.gpd.threshold + model.gpd.scale / (1.0 - model.gpd.shape);

  std::vector<std::pair<double, double>> var_values, cvar_values;
  for (const auto& m : measures) {
    var_values.emplace_back(significance(m.confidence), m.var);
    cvar_values.emplace_back(significance(m.confidence), m.cvar);
  }
  const auto bt_var = risk::backtest_spillover(d.losses, var_values);
  const auto bt_cvar = risk::backtest_spillover(d.losses, cvar_values);

  // Back-test of published boundaries, when given, on the same sample
  std::vector<std::pair<double, double>> pub_var, pub_cvar;
  if (!cfg.data.reference.empty())
    for (const auto& [name, value] : data::load_reference_csv(cfg.data.reference)) {
      const auto at = name.find('@');
      if (at == std::string::npos) continue;
      const double q = std::stod(name.substr(at + 1));
      (name.starts_with("var@") ? pub_var : pub_cvar).emplace_back(significance(q), value);
    }
  const auto bt_pub_var = risk::backtest_spillover(d.losses, pub_var);
  const auto bt_pub_cvar = risk::backtest_spillover(d.losses, pub_cvar);

  const auto table = risk::build_compensation_table(model, cfg.risk.compensation_levels);

  if (opt.format == "csv") {
    CsvWriter w({"confidence", "var", "cvar", "var_count", "var_rate", "cvar_count", "cvar_rate"});
    for (std::size_t i = 0; i < measures.size(); ++i)
      w.row(measures[i].confidence, measures[i].var, measures[i].cvar, bt_var[i].count, bt_var[i].rate,
            bt_cvar[i].count, bt_cvar[i].rate);
    w.write(opt.out / "risk.csv");
    CsvWriter layers({"layer", "lower", "upper", "taker"});
    for (const auto& l : table.layers) layers.row(l.name, l.lower, l.upper, risk::to_string(l.taker));
    layers.write(opt.out / "layers.csv");
  } else {
    const auto bt_json = [](const std::vector<risk::BacktestResult>& rows) {
      json a = json::array();
      for (const auto& r : rows)
        a.push_back({{"level", r.level},
                     {"value", r.value},
                     {"theoretical_rate", r.theoretical_rate},
                     {"theoretical_count", r.theoretical_count},
                     {"count", r.count},
                     {"rate", r.rate}});
      return a;
    };
    json doc = header("risk");
    const char* basis[] = {"pp", "gpd", "exp"};
    doc["basis"] = basis[static_cast<int>(cfg.fit.model)];
    doc["tail_model"] = {{"threshold", model.gpd.threshold},
                         {"scale", model.gpd.scale},
                         {"shape", model.gpd.shape},
                         {"tail_prob", model.tail_prob},
                         {"rate", model.rate}};
    json rows = json::array();
    for (const auto& m : measures) rows.push_back({{"confidence", m.confidence}, {"var", m.var}, {"cvar", m.cvar}});
    doc["measures"] = rows;
    doc["expected_annual_loss"] = annual;
    doc["backtest"] = {{"var", bt_json(bt_var)}, {"cvar", bt_json(bt_cvar)},
                       {"published_var", bt_json(bt_pub_var)}, {"published_cvar", bt_json(bt_pub_cvar)}};
    json layers = json::array();
    for (const auto& l : table.layers)
      layers.push_back({{"layer", l.name}, {"lower", l.lower}, {"upper", num(l.upper)}, {"taker", risk::to_string(l.taker)}});
    doc["compensation"] = layers;
    doc["published_comparison"] = comparison(cfg, ours);
    write_json(opt.out / "risk.json", doc);
  }
  std::cout << "tail model u=" << model.gpd.threshold << " scale=" << model.gpd.scale << " shape=" << model.gpd.shape
            << "; expected annual loss " << annual << '\n';
  return 0;
}

int cmd_rank(const config::Config& cfg, const Options& opt) {
  config::validate(cfg, {"indicators"});
  prepare_out(opt.out);
  mcdm::DecisionMatrix m = data::load_indicator_csv(cfg.data.indicators);
  if (!cfg.rank.criteria.empty()) {
    std::vector<Eigen::Index> cols;
    for (int j : cfg.rank.criteria) cols.push_back(j - 1);
    m = m.select_criteria(cols);
  }
  const auto normalized = mcdm::normalize_minmax(m);
  Eigen::VectorXd w;
  switch (cfg.rank.weights) {
    case config::WeightScheme::Equal: w = mcdm::equal_weights(m.cols()); break;
    case config::WeightScheme::Entropy: w = mcdm::entropy_weights(normalized, cfg.rank.shift); break;
    case config::WeightScheme::Explicit:
      w = Eigen::Map<const Eigen::VectorXd>(cfg.rank.explicit_weights.data(),
                                            static_cast<Eigen::Index>(cfg.rank.explicit_weights.size()));
      break;
  }
  const auto result = cfg.rank.method == mcdm::Method::GRA
                          ? mcdm::gra_grade(mcdm::gra_coefficients(normalized, cfg.rank.zeta), w, m.alternatives)
                          : mcdm::topsis_rank(m, w);
  const auto tiers = mcdm::assign_tiers(result, cfg.rank.breaks);

  std::vector<std::size_t> order(result.alternatives.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[static_cast<std::size_t>(result.rank[i] - 1)] = i;

  if (opt.format == "csv") {
    CsvWriter out({"province", "score", "rank", "tier"});
    for (auto i : order)
      out.row(result.alternatives[i], result.score[static_cast<Eigen::Index>(i)], result.rank[i],
              std::string(1, tiers.tier[i]));
    out.write(opt.out / "rank.csv");
  } else {
    json doc = header("rank");
    doc["method"] = mcdm::to_string(result.method);
    doc["criteria"] = m.criteria;
    doc["weights"] = std::vector<double>(w.data(), w.data() + w.size());
    if (result.method == mcdm::Method::GRA) doc["zeta"] = cfg.rank.zeta;
    json rows = json::array();
    for (auto i : order)
      rows.push_back({{"province", result.alternatives[i]},
                      {"score", result.score[static_cast<Eigen::Index>(i)]},
                      {"rank", result.rank[i]},
                      {"tier", std::string(1, tiers.tier[i])}});
    doc["ranking"] = rows;
    write_json(opt.out / "rank.json", doc);
  }
  const auto top = order.front();
  std::cout << mcdm::to_string(result.method) << ": " << result.alternatives[top] << " first ("
            << result.score[static_cast<Eigen::Index>(top)] << ")\n";
  return 0;
}

json bond_echo(const config::Config& cfg) {
  json layers = json::array();
  for (const auto& l : cfg.trigger.layers) layers.push_back({{"threshold", l.threshold}, {"wipe_fraction", l.wipe_fraction}});
  const auto factor = [](const OuFactor<double>& f) {
    return json{{"speed", f.speed}, {"mean", f.mean}, {"vol", f.vol}, {"initial", f.initial}};
  };
  return {{"face", cfg.bond.face},
          {"maturity", cfg.bond.maturity},
          {"coupon_interval", cfg.bond.coupon_interval},
          {"spread", cfg.bond.spread},
          {"trigger",
           {{"rate", cfg.trigger.rate},
            {"layers", layers},
            {"severity",
             {{"threshold", cfg.trigger.severity.threshold},
              {"scale", cfg.trigger.severity.scale},
              {"shape", cfg.trigger.severity.shape}}}}},
          {"rates",
           {{"risk_free", factor(cfg.rates.rate)},
            {"reference", factor(cfg.rates.reference)},
            {"correlation", cfg.rates.correlation}}}};
}

catbond::PricingOptions pricing(const config::Config& cfg) {
  catbond::PricingOptions p = cfg.pricing;
  p.seed = *cfg.seed;
  return p;
}

int cmd_price(const config::Config& cfg, const Options& opt) {
  config::validate(cfg, {});
  require_seed(cfg, "price");
  prepare_out(opt.out);
  const auto p = pricing(cfg);
  const auto r = catbond::price_bond(cfg.bond, cfg.trigger, cfg.rates, p);
  const double riskless = catbond::riskless_value(cfg.bond, cfg.rates);
  if (opt.format == "csv") {
    CsvWriter w({"price", "std_error", "paths", "seed", "kappa", "spread", "wipeout_probability", "riskless_value"});
    w.row(r.price, r.standard_error, r.paths, p.seed, p.kappa, cfg.bond.spread, r.wipeout_probability, riskless);
    w.write(opt.out / "price.csv");
  } else {
    json doc = header("price");
    doc["price"] = r.price;
    doc["std_error"] = r.standard_error;
    doc["paths"] = r.paths;
    doc["seed"] = p.seed;
    doc["kappa"] = p.kappa;
    doc["spread"] = cfg.bond.spread;
    doc["wipeout_probability"] = r.wipeout_probability;
    doc["mean_remaining_principal"] = r.mean_remaining_principal;
    doc["riskless_value"] = riskless;
    doc["config"] = bond_echo(cfg);
    write_json(opt.out / "price.json", doc);
  }
  std::cout << std::fixed << std::setprecision(4) << "price " << r.price << " (se " << r.standard_error
            << ") at kappa " << p.kappa << ", spread " << cfg.bond.spread << '\n';
  return 0;
}

int cmd_calibrate(const config::Config& cfg, const Options& opt) {
  config::validate(cfg, {});
  require_seed(cfg, "calibrate");
  prepare_out(opt.out);
  const auto p = pricing(cfg);
  const auto& c = cfg.calibrate;
  const auto r = catbond::calibrate_kappa(cfg.bond, cfg.trigger, cfg.rates, c.target, c.bracket, p, c.tolerance,
                                          c.max_iterations);
  json doc = header("calibrate");
  doc["target"] = c.target;
  doc["kappa"] = r.kappa;
  doc["price"] = r.price;
  doc["std_error"] = r.standard_error;
  doc["iterations"] = r.iterations;
  doc["converged"] = r.converged;
  doc["paths"] = p.paths;
  doc["seed"] = p.seed;
  doc["spread"] = cfg.bond.spread;
  doc["config"] = bond_echo(cfg);
  write_json(opt.out / "calibrate.json", doc);
  std::cout << "kappa " << r.kappa << " prices at " << r.price << " (target " << c.target << ")\n";
  return r.converged ? 0 : 1;
}

int cmd_sweep(const config::Config& cfg, const Options& opt) {
  config::validate(cfg, {});
  require_seed(cfg, "sweep");
  prepare_out(opt.out);
  const auto p = pricing(cfg);
  const auto rows = catbond::sensitivity_sweep(cfg.sweep.parameter, cfg.sweep.grid, cfg.bond, cfg.trigger, cfg.rates,
                                               p, cfg.sweep.scale_to_shape);
  const std::string name = cfg.sweep.parameter == catbond::SweepParameter::Kappa ? "kappa" : "shape";
  CsvWriter w({name, "price", "std_error", "valid", "note"});
  for (const auto& r : rows) w.row(r.value, r.price, r.standard_error, r.valid ? 1 : 0, r.note);
  w.write(opt.out / "sweep.csv");
  if (opt.format == "json") {
    json doc = header("sweep");
    doc["parameter"] = name;
    doc["paths"] = p.paths;
    doc["seed"] = p.seed;
    doc["spread"] = cfg.bond.spread;
    if (cfg.sweep.parameter == catbond::SweepParameter::Shape) doc["scale_to_shape"] = cfg.sweep.scale_to_shape;
    json a = json::array();
    for (const auto& r : rows)
      a.push_back({{"value", r.value}, {"price", r.price}, {"std_error", r.standard_error}, {"valid", r.valid}, {"note", r.note}});
    doc["rows"] = a;
    doc["config"] = bond_echo(cfg);
    write_json(opt.out / "sweep.json", doc);
  }
  std::cout << "wrote " << rows.size() << " rows to sweep.csv\n";
  return 0;
}

config::Config resolve_config(const Options& opt) {
  config::Config cfg = opt.config ? config::load(*opt.config) : config::defaults();
  if (opt.seed) cfg.seed = opt.seed;
  if (opt.model) cfg.fit.model = *opt.model == "pp" ? config::TailBasis::PointProcess
                                 : *opt.model == "gpd" ? config::TailBasis::Gpd
                                                       : config::TailBasis::Exponential;
  if (opt.method) cfg.rank.method = *opt.method == "gra" ? mcdm::Method::GRA : mcdm::Method::TOPSIS;
  if (opt.weights) {
    if (*opt.weights == "equal") {
      cfg.rank.weights = config::WeightScheme::Equal;
    } else if (*opt.weights == "entropy") {
      cfg.rank.weights = config::WeightScheme::Entropy;
    } else {
      cfg.rank.weights = config::WeightScheme::Explicit;
      cfg.rank.explicit_weights = config::parse_list(*opt.weights);
    }
  }
  if (opt.workers) cfg.pricing.workers = *opt.workers;
  if (opt.paths) cfg.pricing.paths = *opt.paths;
  if (opt.kappa) cfg.pricing.kappa = *opt.kappa;
  if (opt.parameter)
    cfg.sweep.parameter = *opt.parameter == "kappa" ? catbond::SweepParameter::Kappa : catbond::SweepParameter::Shape;
  if (opt.grid) cfg.sweep.grid = config::parse_list(*opt.grid);
  return cfg;
}

}  // namespace

int run(const std::string& command, const Options& options) {
  static const std::map<std::string, int (*)(const config::Config&, const Options&)> commands = {
      {"diagnose", cmd_diagnose}, {"fit", cmd_fit},             {"risk", cmd_risk}, {"rank", cmd_rank},
      {"price", cmd_price},       {"calibrate", cmd_calibrate}, {"sweep", cmd_sweep}};
  try {
    const auto it = commands.find(command);
    if (it == commands.end()) throw InputError("unknown command " + command);
    return it->second(resolve_config(options), options);
  } catch (const data::RowParseError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    for (const auto& r : e.rows()) std::cerr << "  line " << r.line << ": " << r.message << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace floodrisk::cli
