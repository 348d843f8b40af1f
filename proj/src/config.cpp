#include "bidlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "bidlab/errors.hpp"

namespace bidlab {

namespace {

using nlohmann::json;

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

double real(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

long long integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<long long>();
}

bool boolean(const json& j, const std::string& what) {
  if (!j.is_boolean()) throw ConfigError(what + " must be true or false");
  return j.get<bool>();
}

std::string text(const json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string");
  return j.get<std::string>();
}

DistributionSpec distribution(const json& j, const std::string& where) {
  only_keys(j, {"type", "params"}, where);
  if (!j.contains("type") || !j.contains("params")) throw ConfigError(where + " needs 'type' and 'params'");
  const json& ps = j.at("params");
  if (!ps.is_array()) throw ConfigError(where + ".params must be an array");
  std::vector<double> params;
  for (const auto& p : ps) params.push_back(real(p, where + ".params[]"));
  try {
    return DistributionSpec::from_tagged(text(j.at("type"), where + ".type"), params);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

void parse_auction(const json& j, ExperimentSpec& spec) {
  only_keys(j, {"rival", "value", "lambda", "bid_grid_step", "horizon", "budget", "feedback", "seed"}, "auction");
  AuctionConfig& a = spec.auction;
  if (!j.contains("rival") || !j.contains("value")) throw ConfigError("auction needs 'rival' and 'value'");
  a.rival = distribution(j.at("rival"), "auction.rival");
  a.value = distribution(j.at("value"), "auction.value");
  if (j.contains("lambda")) a.lambda = real(j.at("lambda"), "auction.lambda");
  if (j.contains("bid_grid_step")) a.bid_grid_step = real(j.at("bid_grid_step"), "auction.bid_grid_step");
  if (j.contains("horizon")) a.horizon = static_cast<int>(integer(j.at("horizon"), "auction.horizon"));
  if (j.contains("budget")) a.budget = real(j.at("budget"), "auction.budget");
  if (j.contains("feedback")) {
    const std::string f = text(j.at("feedback"), "auction.feedback");
    if (f == "full") a.feedback = FeedbackMode::Full;
    else if (f == "censored") a.feedback = FeedbackMode::Censored;
    else throw ConfigError("auction.feedback must be 'full' or 'censored'");
  }
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("auction.seed must be a nonnegative integer");
    a.seed = s.get<std::uint64_t>();
  }
  if (!(a.lambda >= 0.0 && a.lambda < 1.0)) throw ConfigError("auction.lambda must lie in [0,1)");
}

PolicyParams parse_params(const json& j, const std::string& where, PolicyParams p) {
  if (j.contains("c1")) p.c1 = real(j.at("c1"), where + ".c1");
  if (j.contains("recompute_every")) p.recompute_every = static_cast<int>(integer(j.at("recompute_every"), where + ".recompute_every"));
  if (j.contains("estimate_values")) p.estimate_values = boolean(j.at("estimate_values"), where + ".estimate_values");
  if (j.contains("bandwidth_c")) p.bandwidth_c = real(j.at("bandwidth_c"), where + ".bandwidth_c");
  if (j.contains("feature_dim")) p.feature_dim = static_cast<int>(integer(j.at("feature_dim"), where + ".feature_dim"));
  if (j.contains("table_span")) p.table_span = static_cast<int>(integer(j.at("table_span"), where + ".table_span"));
  p.validate();
  return p;
}

void parse_policies(const json& j, ExperimentSpec& spec) {
  if (!j.is_array() || j.empty()) throw ConfigError("policies must be a nonempty array");
  PolicyParams base;
  base.lambda = spec.auction.lambda;
  base.bid_grid_step = spec.auction.bid_grid_step;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "policies[" + std::to_string(i) + "]";
    const json& e = j[i];
    only_keys(e, {"label", "kind", "c1", "recompute_every", "estimate_values", "bandwidth_c", "feature_dim", "table_span"},
              where);
    if (!e.contains("kind")) throw ConfigError(where + " needs 'kind'");
    PolicySpec ps;
    ps.kind = parse_policy_kind(text(e.at("kind"), where + ".kind"));
    ps.label = e.contains("label") ? text(e.at("label"), where + ".label") : policy_kind_name(ps.kind);
    if (ps.label.empty() || ps.label.find_first_of(",\n\"") != std::string::npos)
      throw ConfigError(where + ".label must be nonempty and free of commas and quotes");
    ps.params = parse_params(e, where, base);
    spec.policies.push_back(std::move(ps));
  }
}

void parse_sweep(const json& j, ExperimentSpec& spec) {
  only_keys(j, {"horizons", "budget", "replications", "seed", "output_dir", "oracle"}, "sweep");
  if (j.contains("horizons")) {
    const json& h = j.at("horizons");
    if (!h.is_array()) throw ConfigError("sweep.horizons must be an array");
    spec.horizons.clear();
    for (const auto& x : h) spec.horizons.push_back(static_cast<int>(integer(x, "sweep.horizons[]")));
  }
  if (j.contains("budget")) {
    const json& b = j.at("budget");
    only_keys(b, {"rule", "beta", "amount"}, "sweep.budget");
    const std::string rule = b.contains("rule") ? text(b.at("rule"), "sweep.budget.rule") : "proportional";
    if (rule == "proportional") {
      if (b.contains("amount")) throw ConfigError("sweep.budget: 'amount' belongs to the fixed rule");
      spec.budget.kind = BudgetRule::Kind::Proportional;
      if (b.contains("beta")) spec.budget.amount = real(b.at("beta"), "sweep.budget.beta");
    } else if (rule == "fixed") {
      if (b.contains("beta") || !b.contains("amount")) throw ConfigError("sweep.budget: fixed rule needs 'amount' only");
      spec.budget.kind = BudgetRule::Kind::Fixed;
      spec.budget.amount = real(b.at("amount"), "sweep.budget.amount");
    } else {
      throw ConfigError("sweep.budget.rule must be 'proportional' or 'fixed'");
    }
  }
  if (j.contains("replications")) spec.replications = static_cast<int>(integer(j.at("replications"), "sweep.replications"));
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("sweep.seed must be a nonnegative integer");
    spec.master_seed = s.get<std::uint64_t>();
  }
  if (j.contains("output_dir")) spec.output_dir = text(j.at("output_dir"), "sweep.output_dir");
  if (j.contains("oracle")) {
    only_keys(j.at("oracle"), {"c1", "recompute_every"}, "sweep.oracle");
    spec.oracle = parse_params(j.at("oracle"), "sweep.oracle", spec.oracle);
  }
}

}  // namespace

ExperimentSpec parse_experiment(const std::string& text_in) {
  json doc;
  try {
    doc = json::parse(text_in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  only_keys(doc, {"auction", "policies", "sweep"}, "config");
  if (!doc.contains("auction")) throw ConfigError("config needs an 'auction' section");
  if (!doc.contains("policies")) throw ConfigError("config needs a 'policies' section");

  ExperimentSpec spec;
  parse_auction(doc.at("auction"), spec);
  spec.oracle.lambda = spec.auction.lambda;
  spec.oracle.bid_grid_step = spec.auction.bid_grid_step;
  parse_policies(doc.at("policies"), spec);
  if (doc.contains("sweep")) parse_sweep(doc.at("sweep"), spec);
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str());
}

DistributionSpec parse_distribution(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed distribution: ") + e.what());
  }
  return distribution(j, "distribution");
}

std::string distribution_to_json(const DistributionSpec& spec) {
  json j;
  j["type"] = spec.tag();
  j["params"] = spec.params();
  return j.dump();
}

std::string resolve_output_dir(const std::string& flag, const std::string& configured) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return configured;
}

}  // namespace bidlab
