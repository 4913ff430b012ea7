#include "cpath/cli/config.h"

#include <stdexcept>

#include "cpath/features/consolidate.h"
#include "cpath/features/extract.h"
#include "cpath/features/pdfrate.h"
#include "cpath/util/error.h"
#include "cpath/util/files.h"
#include "json.hpp"

namespace cpath::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kConfig, where + ": " + what);
}

// Reads one JSON object, echoing every value it hands out (defaults
// included) into `out`, and rejects keys nobody asked for. `out` is a
// std::map-backed json, so references to nested members stay valid while
// siblings are added.
class Reader {
 public:
  Reader(const json& obj, std::string where, json* out)
      : obj_(obj), where_(std::move(where)), out_(out) {
    if (!obj_.is_object()) Fail(where_, "expected an object");
    *out_ = json::object();
  }

  bool Has(const std::string& key) const { return obj_.contains(key); }

  template <typename T>
  T Get(const std::string& key, T fallback) {
    seen_.insert(key);
    T value = fallback;
    if (obj_.contains(key)) {
      try {
        value = obj_.at(key).get<T>();
      } catch (const json::exception&) {
        Fail(Where(key), "has the wrong type");
      }
    }
    (*out_)[key] = value;
    return value;
  }

  // Raw access for values with several accepted shapes; the caller echoes.
  const json* Raw(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key) ? &obj_.at(key) : nullptr;
  }
  void Echo(const std::string& key, json value) { (*out_)[key] = std::move(value); }

  Reader Child(const std::string& key) {
    seen_.insert(key);
    static const json kEmpty = json::object();
    return Reader(obj_.contains(key) ? obj_.at(key) : kEmpty, Where(key), &(*out_)[key]);
  }

  std::string Where(const std::string& key) const { return where_ + "." + key; }

  void Finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) Fail(Where(key), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string where_;
  json* out_;
  std::set<std::string> seen_;
};

fs::path Resolve(const fs::path& base, const std::string& written) {
  fs::path p(written);
  return p.is_absolute() ? p : base / p;
}

fs::path InputPath(Reader& r, const std::string& key, const fs::path& base, bool must_exist = true) {
  const std::string written = r.Get<std::string>(key, "");
  if (written.empty()) return {};
  fs::path p = Resolve(base, written);
  if (must_exist && !fs::exists(p)) Fail(r.Where(key), "path \"" + written + "\" does not exist");
  return p;
}

template <typename T>
T Positive(Reader& r, const std::string& key, T fallback) {
  const T v = r.Get<T>(key, fallback);
  if (!(v > 0)) Fail(r.Where(key), "must be positive");
  return v;
}

OracleSpec ParseOracle(Reader r, const fs::path& base) {
  OracleSpec spec;
  spec.kind = r.Get<std::string>("kind", "rule");
  if (spec.kind == "rule") {
    spec.rules = InputPath(r, "rules", base);
    if (spec.rules.empty()) Fail(r.Where("rules"), "rule oracle needs a rules file");
  } else if (spec.kind == "command") {
    spec.program = r.Get<std::string>("program", "");
    if (spec.program.empty()) Fail(r.Where("program"), "command oracle needs a program");
    // Programs given as relative paths with a directory part are relative to
    // the config; bare names are looked up on PATH.
    if (spec.program.find('/') != std::string::npos) {
      spec.program = Resolve(base, spec.program).string();
    }
    spec.timeout_ms = Positive<int64_t>(r, "timeout_ms", 60000);
    spec.max_parallelism = Positive<size_t>(r, "max_parallelism", 1);
  } else if (spec.kind == "cache") {
    spec.strict = r.Get<bool>("strict", true);
    spec.store = InputPath(r, "store", base, spec.strict);
    if (spec.store.empty()) Fail(r.Where("store"), "cache oracle needs a store file");
    if (r.Has("fallback") || !spec.strict) {
      spec.fallback = std::make_shared<OracleSpec>(ParseOracle(r.Child("fallback"), base));
    }
  } else {
    Fail(r.Where("kind"), "unknown oracle kind \"" + spec.kind + "\"");
  }
  r.Finish();
  return spec;
}

std::set<std::string> StringSet(const json& value, const std::string& where) {
  if (!value.is_array()) Fail(where, "expected an array of strings");
  std::set<std::string> out;
  for (const auto& v : value) {
    if (!v.is_string()) Fail(where, "expected an array of strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

AttackSpec ParseAttack(Reader r, uint64_t rng_seed) {
  AttackSpec spec;
  const std::string kind = r.Get<std::string>("kind", "coordinate_greedy");
  spec.name = r.Get<std::string>("name", kind);
  if (spec.name.empty() || spec.name.find_first_of("/\\ ") != std::string::npos) {
    Fail(r.Where("name"), "attack names must be non-empty without '/', '\\' or spaces");
  }
  if (kind == "coordinate_greedy") {
    learn::CoordinateGreedyParams p;
    p.lambda = r.Get<double>("lambda", learn::kDefaultLambda);
    if (p.lambda < 0) Fail(r.Where("lambda"), "must be non-negative");
    p.max_sweeps = Positive<size_t>(r, "max_sweeps", p.max_sweeps);
    p.restarts = Positive<size_t>(r, "restarts", p.restarts);
    spec.config.kind = p;
  } else if (kind == "salt_pepper") {
    learn::SaltPepperParams p;
    p.epsilon = r.Get<size_t>("epsilon", learn::kDefaultEpsilon);
    p.max_draws = Positive<size_t>(r, "max_draws", p.max_draws);
    p.draw_size = Positive<size_t>(r, "draw_size", p.draw_size);
    spec.config.kind = p;
  } else {
    Fail(r.Where("kind"), "unknown attack kind \"" + kind + "\"");
  }
  const json* frozen = r.Raw("frozen");
  if (frozen == nullptr || (frozen->is_string() && *frozen == "none")) {
    r.Echo("frozen", "none");
  } else if (frozen->is_string() && *frozen == "conserved") {
    spec.frozen_source = FrozenSource::kConserved;
    r.Echo("frozen", "conserved");
  } else {
    spec.frozen_source = FrozenSource::kList;
    spec.frozen_list = StringSet(*frozen, r.Where("frozen"));
    r.Echo("frozen", spec.frozen_list);
  }
  spec.config.rng_seed = rng_seed;
  r.Finish();
  return spec;
}

DatasetSpec ParseDataset(Reader r, const fs::path& base, uint64_t rng_seed) {
  DatasetSpec spec;
  spec.synthetic = r.Get<std::string>("synthetic", "");
  if (spec.synthetic == "evasion_toy" || spec.synthetic == "signal") {
    spec.seed = r.Get<uint64_t>("seed", rng_seed);
    spec.per_class = Positive<size_t>(r, "per_class", spec.per_class);
    if (spec.synthetic == "signal") {
      spec.num_features = Positive<size_t>(r, "num_features", spec.num_features);
      spec.signal = r.Get<size_t>("signal", spec.signal);
      if (spec.signal > spec.num_features) Fail(r.Where("signal"), "exceeds num_features");
    }
  } else if (spec.synthetic.empty()) {
    try {
      spec.kind = features::ParseSpaceKind(r.Get<std::string>("kind", "sl2013"));
    } catch (const std::invalid_argument& e) {
      Fail(r.Where("kind"), e.what());
    }
    spec.space = InputPath(r, "space", base, false);
    spec.train = InputPath(r, "train", base, false);
    spec.test = InputPath(r, "test", base, false);
    if (spec.space.empty() || spec.train.empty() || spec.test.empty()) {
      Fail(r.Where("synthetic"), "file data sets need space, train and test");
    }
  } else {
    Fail(r.Where("synthetic"), "unknown synthetic data set \"" + spec.synthetic + "\"");
  }
  r.Finish();
  return spec;
}

SweepSpec ParseSweep(Reader r) {
  SweepSpec spec;
  const json* grid = r.Raw("grid");
  if (grid == nullptr || !grid->is_array() || grid->empty()) {
    Fail(r.Where("grid"), "needs a non-empty array of C values");
  }
  for (const auto& c : *grid) {
    if (!c.is_number() || !(c.get<double>() > 0)) Fail(r.Where("grid"), "C values must be positive");
    spec.grid.push_back(c.get<double>());
  }
  r.Echo("grid", spec.grid);
  const json* match = r.Raw("match_count");
  const json* cover = r.Raw("cover");
  if ((match != nullptr) == (cover != nullptr)) {
    Fail(r.Where("match_count"), "give exactly one of match_count and cover");
  }
  if (match != nullptr) {
    if (!match->is_number_unsigned() || match->get<size_t>() == 0) {
      Fail(r.Where("match_count"), "must be a positive integer");
    }
    spec.match_count = match->get<size_t>();
    r.Echo("match_count", *spec.match_count);
  } else if (cover->is_string() && *cover == "conserved") {
    spec.cover_conserved = true;
    r.Echo("cover", "conserved");
  } else {
    spec.cover = StringSet(*cover, r.Where("cover"));
    r.Echo("cover", spec.cover);
  }
  spec.threshold = r.Get<double>("threshold", spec.threshold);
  r.Finish();
  return spec;
}

}  // namespace

RunConfig ParseRunConfig(std::string_view json_text, const fs::path& base_dir,
                         const Overrides& overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail("config", e.what());
  }
  RunConfig cfg;
  cfg.base_dir = base_dir;
  json out;
  Reader root(doc, "$", &out);

  cfg.rng_seed = root.Get<uint64_t>("rng_seed", 0);
  if (overrides.rng_seed) cfg.rng_seed = *overrides.rng_seed;
  root.Echo("rng_seed", cfg.rng_seed);
  cfg.workers = Positive<size_t>(root, "workers", 1);
  if (overrides.workers) cfg.workers = *overrides.workers;
  root.Echo("workers", cfg.workers);
  const std::string out_dir = root.Get<std::string>("output_dir", "out");
  cfg.output_dir = overrides.output_dir ? *overrides.output_dir : Resolve(base_dir, out_dir);
  // Reports carry the path as written so relocating --out keeps them identical.
  root.Echo("output_dir", out_dir);

  {
    Reader corpus = root.Child("corpus");
    cfg.seeds = InputPath(corpus, "seeds", base_dir);
    cfg.donors = InputPath(corpus, "donors", base_dir);
    cfg.clean = InputPath(corpus, "clean", base_dir);
    corpus.Finish();
  }
  if (root.Has("oracle")) {
    cfg.oracle = ParseOracle(root.Child("oracle"), base_dir);
  } else {
    cfg.oracle.kind.clear();
    root.Echo("oracle", nullptr);
  }

  {
    Reader p = root.Child("pipeline");
    cfg.depth_limit = Positive<size_t>(p, "depth_limit", features::kDefaultDepthLimit);
    cfg.space_params.depth_limit = cfg.depth_limit;
    const json* beta = p.Raw("beta");
    try {
      if (beta == nullptr) {
        cfg.beta = conserve::Rational(3, 1);
      } else if (beta->is_string()) {
        cfg.beta = conserve::Rational::Parse(beta->get<std::string>());
      } else if (beta->is_number()) {
        cfg.beta = conserve::Rational::FromDouble(beta->get<double>());
      } else {
        Fail(p.Where("beta"), "must be a number or a fraction string");
      }
    } catch (const std::invalid_argument& e) {
      Fail(p.Where("beta"), e.what());
    }
    p.Echo("beta", cfg.beta.ToString());
    const fs::path rules = InputPath(p, "rules", base_dir);
    const fs::path defs = InputPath(p, "count_features", base_dir);
    try {
      if (!rules.empty()) cfg.space_params.rules = features::ParseRuleFile(ReadFile(rules));
      if (!defs.empty()) cfg.space_params.count_defs = features::ParseCountFeatureDefs(ReadFile(defs));
    } catch (const std::invalid_argument& e) {
      Fail(p.Where(rules.empty() ? "count_features" : "rules"), e.what());
    }
    json rule_text = json::array();
    for (const auto& rule : cfg.space_params.rules) rule_text.push_back(rule.ToString());
    p.Echo("effective_rules", rule_text);
    json def_json = json::array();
    for (const auto& d : cfg.space_params.count_defs) {
      def_json.push_back({{"name", d.name}, {"match", d.match}, {"threshold", d.threshold}});
    }
    p.Echo("effective_count_features", def_json);
    const json* spaces = p.Raw("spaces");
    std::vector<std::string> space_names{"sl2013", "hidost", "pdfrate_b"};
    if (spaces != nullptr) {
      const auto set = StringSet(*spaces, p.Where("spaces"));
      space_names.assign(set.begin(), set.end());
    }
    for (const auto& name : space_names) {
      try {
        cfg.spaces.push_back(features::ParseSpaceKind(name));
      } catch (const std::invalid_argument& e) {
        Fail(p.Where("spaces"), e.what());
      }
    }
    p.Echo("spaces", space_names);
    cfg.conserved_sets = InputPath(p, "conserved_sets", base_dir, false);
    p.Finish();
  }

  {
    Reader l = root.Child("learning");
    if (l.Has("dataset")) {
      cfg.dataset = ParseDataset(l.Child("dataset"), base_dir, cfg.rng_seed);
    } else {
      l.Echo("dataset", nullptr);
    }
    {
      Reader t = l.Child("train");
      {
        Reader reg = t.Child("reg");
        try {
          cfg.train.reg.kind = learn::ParseRegKind(reg.Get<std::string>("kind", "l2"));
        } catch (const std::invalid_argument& e) {
          Fail(reg.Where("kind"), e.what());
        }
        cfg.train.reg.C = Positive<double>(reg, "C", 1.0);
        reg.Finish();
      }
      cfg.train.epochs = Positive<size_t>(t, "epochs", cfg.train.epochs);
      cfg.train.step = Positive<double>(t, "step", cfg.train.step);
      try {
        cfg.train.schedule = learn::ParseStepSchedule(t.Get<std::string>("schedule", "inverse_sqrt"));
      } catch (const std::invalid_argument& e) {
        Fail(t.Where("schedule"), e.what());
      }
      cfg.train.batch_size = t.Get<size_t>("batch_size", 0);
      cfg.train.rng_seed = cfg.rng_seed;
      t.Finish();
    }
    const json* attacks = l.Raw("attacks");
    if (attacks != nullptr && !attacks->is_array()) Fail(l.Where("attacks"), "expected an array");
    const json defaults = json::array({json{{"kind", "coordinate_greedy"}}, json{{"kind", "salt_pepper"}}});
    const json& list = attacks != nullptr ? *attacks : defaults;
    json echoed = json::array();
    std::set<std::string> names;
    for (size_t i = 0; i < list.size(); ++i) {
      json one;
      cfg.attacks.push_back(ParseAttack(Reader(list[i], l.Where("attacks") + "[" + std::to_string(i) + "]", &one), cfg.rng_seed));
      if (!names.insert(cfg.attacks.back().name).second) {
        Fail(l.Where("attacks"), "duplicate attack name \"" + cfg.attacks.back().name + "\"");
      }
      echoed.push_back(std::move(one));
    }
    l.Echo("attacks", echoed);
    {
      Reader r = l.Child("retrain");
      cfg.retrain.max_iterations = r.Get<size_t>("max_iterations", cfg.retrain.max_iterations);
      cfg.retrain.seeds_per_iteration = r.Get<size_t>("seeds_per_iteration", 0);
      cfg.retrain.stop_when_no_new = r.Get<bool>("stop_when_no_new", true);
      r.Finish();
    }
    cfg.attack_samples = Positive<size_t>(l, "attack_samples", cfg.attack_samples);
    if (l.Has("l1_sweep")) {
      cfg.sweep = ParseSweep(l.Child("l1_sweep"));
    } else {
      l.Echo("l1_sweep", nullptr);
    }
    cfg.conserved = InputPath(l, "conserved", base_dir, false);
    cfg.model = InputPath(l, "model", base_dir, false);
    l.Finish();
  }
  root.Finish();
  cfg.materialized = out.dump(2);
  return cfg;
}

RunConfig LoadRunConfig(const fs::path& path, const Overrides& overrides) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  return ParseRunConfig(text, path.parent_path(), overrides);
}

}  // namespace cpath::cli
