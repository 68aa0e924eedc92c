// Command-line surface: order / split / class-enum / census / chebotarev /
// matrix-order / matrix-census. All numeric results are exact integers or
// [num, den] rationals in JSON; the census CSV densities are the single
// floating-point output. Exit codes: 0 success, 1 usage/parse, 2 math
// precondition, 3 undetermined, 4 internal correctness failure.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "artin/frobclass.hpp"
#include "artin/matrixord.hpp"
#include "artin/numfield.hpp"
#include "artin/obstruct.hpp"

using json = nlohmann::ordered_json;
using namespace artin;
using arith::u64;
using intpoly::ZPoly;

namespace {

json int_to_json(const Int& v) {
  // JSON numbers hold 64-bit integers exactly; wider values go out as strings
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

json rat_to_json(const Rat& r) { return json::array({int_to_json(r.num), int_to_json(r.den)}); }

struct FieldFile {
  numfield::FieldPtr field;
  std::optional<numfield::AlgebraicElement> alpha;
  std::optional<frobclass::ClassSelector> selector;
};

ZPoly parse_zpoly(const json& arr, const char* what) {
  if (!arr.is_array() || arr.empty())
    throw IoError(std::string(what) + " must be a nonempty array of integers");
  ZPoly f;
  for (const auto& c : arr) {
    if (!c.is_number_integer())
      throw IoError(std::string(what) + " must contain integers");
    f.emplace_back((long long)c.get<std::int64_t>());
  }
  return f;
}

FieldFile load_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("field file parse error: " + std::string(e.what()));
  }
  if (!j.contains("min_poly")) throw IoError("field file: missing min_poly");
  FieldFile ff;
  ZPoly f = parse_zpoly(j["min_poly"], "min_poly");
  if (f.empty() || f.back() != 1)
    throw IoError("min_poly must be monic (last coefficient 1)");
  ff.field = numfield::FieldSpec::create(std::move(f));
  if (j.contains("alpha")) {
    const json& a = j["alpha"];
    if (!a.contains("num") || !a.contains("den"))
      throw IoError("alpha needs num (array) and den (positive integer)");
    ZPoly num = parse_zpoly(a["num"], "alpha.num");
    if (!a["den"].is_number_integer() || a["den"].get<std::int64_t>() <= 0)
      throw IoError("alpha.den must be a positive integer");
    ff.alpha = numfield::AlgebraicElement::create(ff.field, std::move(num),
                                                  Int(a["den"].get<std::int64_t>()));
  }
  if (j.contains("selector")) {
    const json& s = j["selector"];
    frobclass::ClassSelector sel;
    std::string mode = s.value("mode", "");
    if (mode == "AllDegreeTwo") {
      sel.mode = frobclass::SelMode::AllDegreeTwo;
    } else if (mode == "QuadraticSigns") {
      sel.mode = frobclass::SelMode::QuadraticSigns;
      if (!s.contains("signs")) throw IoError("QuadraticSigns needs signs");
      for (const auto& pair : s["signs"]) {
        if (!pair.is_array() || pair.size() != 2)
          throw IoError("signs entries must be [n, sign]");
        sel.signs.emplace_back(pair[0].get<std::int64_t>(),
                               (int)pair[1].get<std::int64_t>());
      }
    } else if (mode == "PatternMatch") {
      sel.mode = frobclass::SelMode::PatternMatch;
      if (!s.contains("pattern")) throw IoError("PatternMatch needs pattern");
      for (const auto& pair : s["pattern"]) {
        if (!pair.is_array() || pair.size() != 2)
          throw IoError("pattern entries must be [degree, count]");
        sel.pattern.entries.emplace_back((int)pair[0].get<std::int64_t>(),
                                         (int)pair[1].get<std::int64_t>());
      }
    } else {
      throw IoError(
          "selector.mode must be AllDegreeTwo, QuadraticSigns or PatternMatch");
    }
    ff.selector = std::move(sel);
  }
  return ff;
}

matrixord::RationalMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("matrix file parse error: " + std::string(e.what()));
  }
  if (!j.contains("n") || !j.contains("entries"))
    throw IoError("matrix file needs n and entries");
  int n = (int)j["n"].get<std::int64_t>();
  if (n < 1) throw IoError("matrix n must be >= 1");
  const json& rows = j["entries"];
  if (!rows.is_array() || (int)rows.size() != n)
    throw IoError("entries must have n rows");
  std::vector<Rat> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || (int)row.size() != n)
      throw IoError("entries rows must have n [num, den] pairs");
    for (const auto& cell : row) {
      if (!cell.is_array() || cell.size() != 2)
        throw IoError("matrix entries must be [num, den] pairs");
      long long num = cell[0].get<std::int64_t>();
      long long den = cell[1].get<std::int64_t>();
      if (den <= 0) throw IoError("matrix entry denominators must be positive");
      entries.emplace_back(Int(num), Int(den));
    }
  }
  return matrixord::RationalMatrix::create(n, std::move(entries));
}

u64 parse_prime(u64 p) {
  if (!arith::is_prime(p)) throw IoError("--prime must be a prime number");
  return p;
}

obstruct::CensusConfig make_config(u64 limit, const std::string& threshold,
                                   u64 qmax, int shards, u64 seed) {
  obstruct::CensusConfig cfg;
  cfg.X = limit;
  cfg.q_report_max = qmax;
  cfg.shards = shards;
  cfg.seed = seed;
  if (threshold == "log") {
    cfg.family = obstruct::Threshold::Log;
  } else if (threshold == "log2") {
    cfg.family = obstruct::Threshold::LogSquared;
  } else if (threshold.rfind("const:", 0) == 0) {
    cfg.family = obstruct::Threshold::Constant;
    cfg.constant_c = std::stod(threshold.substr(6));
  } else {
    throw IoError("--threshold must be log, log2 or const:<c>");
  }
  return cfg;
}

std::optional<std::string> cache_path_or_env(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ARTIN_CACHE"); env && *env)
    return std::string(env);
  return std::nullopt;
}

arith::FactorCache load_cache_if_any(const std::optional<std::string>& path) {
  if (path && std::ifstream(*path).good()) return obstruct::cache_load(*path);
  return arith::FactorCache{};
}

void store_cache_if_any(const arith::FactorCache& cache,
                        const std::optional<std::string>& path) {
  if (path) obstruct::cache_store(cache, *path);
}

json order_result_json(const numfield::OrderResult& r) {
  json out;
  out["prime_p"] = r.prime_p;
  out["order"] = int_to_json(r.order);
  out["group_exponent"] = int_to_json(r.group_exponent);
  json pf = json::array();
  for (const auto& [d, o] : r.per_factor_orders) pf.push_back(json::array({d, o}));
  out["per_factor_orders"] = pf;
  return out;
}

json pattern_json(const polyfp::DegreePattern& pat) {
  json arr = json::array();
  for (const auto& [d, c] : pat.entries) arr.push_back(json::array({d, c}));
  return arr;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

int run(int argc, char** argv) {
  CLI::App app{"multiplicative-order censuses for number fields and rational matrices"};
  app.require_subcommand(1);

  std::string field_path, matrix_path, cache_flag, threshold = "log";
  std::string out_csv, out_summary, method = "both";
  u64 prime = 0, limit = 0, qmax = 50, seed = 0;
  int shards = 1;

  auto add_cache = [&](CLI::App* cmd) {
    cmd->add_option("--cache", cache_flag, "factor cache file (default $ARTIN_CACHE)");
  };

  auto* c_order = app.add_subcommand("order", "order of alpha in (O_K/pO_K)^x");
  c_order->add_option("--field", field_path, "field JSON file")->required();
  c_order->add_option("--prime", prime, "rational prime p")->required();
  add_cache(c_order);

  auto* c_split = app.add_subcommand("split", "splitting type of p in K");
  c_split->add_option("--field", field_path)->required();
  c_split->add_option("--prime", prime)->required();

  auto* c_enum = app.add_subcommand("class-enum", "enumerate the prime class up to a limit");
  c_enum->add_option("--field", field_path)->required();
  c_enum->add_option("--limit", limit)->required();

  auto* c_census = app.add_subcommand("census", "order/obstruction census over the class");
  c_census->add_option("--field", field_path)->required();
  c_census->add_option("--limit", limit)->required();
  c_census->add_option("--threshold", threshold, "log | log2 | const:<c>");
  c_census->add_option("--out", out_csv, "per-q CSV output path")->required();
  c_census->add_option("--summary", out_summary, "summary JSON output path")->required();
  c_census->add_option("--shards", shards, "parallel shard count");
  c_census->add_option("--seed", seed, "census seed");
  c_census->add_option("--qmax", qmax, "largest q in the per-q table");
  add_cache(c_census);

  auto* c_cheb = app.add_subcommand("chebotarev", "splitting-pattern frequencies up to a limit");
  c_cheb->add_option("--field", field_path)->required();
  c_cheb->add_option("--limit", limit)->required();

  auto* c_morder = app.add_subcommand("matrix-order", "order of A mod p in GL_n(F_p)");
  c_morder->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  c_morder->add_option("--prime", prime)->required();
  c_morder->add_option("--method", method, "direct | eigen | both");
  add_cache(c_morder);

  auto* c_mcensus = app.add_subcommand("matrix-census", "census for a rational matrix");
  c_mcensus->add_option("--matrix", matrix_path)->required();
  c_mcensus->add_option("--limit", limit)->required();
  c_mcensus->add_option("--threshold", threshold, "log | log2 | const:<c>");
  c_mcensus->add_option("--out", out_csv)->required();
  c_mcensus->add_option("--summary", out_summary)->required();
  c_mcensus->add_option("--shards", shards);
  c_mcensus->add_option("--seed", seed);
  c_mcensus->add_option("--qmax", qmax);
  add_cache(c_mcensus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // fold all usage errors onto exit 1
  }

  if (c_order->parsed()) {
    auto ff = load_field_file(field_path);
    if (!ff.alpha) throw IoError("order subcommand needs alpha in the field file");
    parse_prime(prime);
    auto cache_path = cache_path_or_env(cache_flag);
    auto cache = load_cache_if_any(cache_path);
    auto res = numfield::residue_order(*ff.alpha, prime, nullptr, &cache);
    store_cache_if_any(cache, cache_path);
    std::cout << order_result_json(res).dump(2) << "\n";
    return 0;
  }
  if (c_split->parsed()) {
    auto ff = load_field_file(field_path);
    parse_prime(prime);
    auto st = numfield::splitting_type(*ff.field, prime);
    json out;
    out["prime_p"] = st.prime_p;
    out["pattern"] = pattern_json(st.pattern);
    out["ramified"] = st.ramified;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (c_enum->parsed()) {
    auto ff = load_field_file(field_path);
    if (!ff.selector) throw IoError("class-enum needs a selector in the field file");
    auto e = frobclass::enumerate_class(*ff.field, *ff.selector, limit);
    json out;
    out["members"] = e.members;
    json ex = json::array();
    for (const auto& [p, why] : e.excluded) ex.push_back(json::array({p, why}));
    out["excluded"] = ex;
    out["total_primes"] = e.total_primes;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (c_census->parsed()) {
    auto ff = load_field_file(field_path);
    if (!ff.alpha) throw IoError("census needs alpha in the field file");
    if (!ff.selector) throw IoError("census needs a selector in the field file");
    auto cfg = make_config(limit, threshold, qmax, shards, seed);
    auto cache_path = cache_path_or_env(cache_flag);
    auto cache = load_cache_if_any(cache_path);
    auto rep = obstruct::run_census(*ff.field, *ff.alpha, *ff.selector, cfg, &cache);
    store_cache_if_any(cache, cache_path);
    write_text(out_csv, obstruct::census_csv(rep));
    write_text(out_summary, obstruct::census_summary_json(rep));
    std::cout << obstruct::census_summary_json(rep);
    return 0;
  }
  if (c_cheb->parsed()) {
    auto ff = load_field_file(field_path);
    auto freq = frobclass::pattern_frequencies(*ff.field, limit);
    json out;
    out["X"] = limit;
    out["considered"] = freq.considered;
    out["excluded"] = freq.excluded;
    json pats = json::array();
    for (const auto& pc : freq.patterns) {
      json row;
      row["pattern"] = pattern_json(pc.pattern);
      row["count"] = pc.count;
      row["frequency"] = json::array({pc.count, freq.considered});
      pats.push_back(row);
    }
    out["patterns"] = pats;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (c_morder->parsed()) {
    auto A = load_matrix_file(matrix_path);
    parse_prime(prime);
    matrixord::OrderMethod m;
    if (method == "direct")
      m = matrixord::OrderMethod::Direct;
    else if (method == "eigen")
      m = matrixord::OrderMethod::EigenPath;
    else if (method == "both")
      m = matrixord::OrderMethod::Both;
    else
      throw IoError("--method must be direct, eigen or both");
    auto cache_path = cache_path_or_env(cache_flag);
    auto cache = load_cache_if_any(cache_path);
    auto res = matrixord::matrix_order(A, prime, m, nullptr, &cache);
    store_cache_if_any(cache, cache_path);
    if (res.excluded_prime) {
      json out;
      out["prime_p"] = res.prime_p;
      out["excluded_prime"] = true;
      out["reason"] = res.exclude_reason;
      std::cout << out.dump(2) << "\n";
      return 2;
    }
    json out;
    out["prime_p"] = res.prime_p;
    out["order"] = int_to_json(res.order);
    out["method"] = matrixord::order_method_name(res.method);
    out["diagonalizable"] = res.diagonalizable;
    if (m == matrixord::OrderMethod::Both) out["agreement"] = true;
    out["excluded_prime"] = false;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (c_mcensus->parsed()) {
    auto A = load_matrix_file(matrix_path);
    auto cfg = make_config(limit, threshold, qmax, shards, seed);
    // the matrix census always sweeps the all-inertia-degree-2 class of the
    // companion field
    frobclass::ClassSelector sel;
    sel.mode = frobclass::SelMode::AllDegreeTwo;
    auto cache_path = cache_path_or_env(cache_flag);
    auto cache = load_cache_if_any(cache_path);
    auto rep = matrixord::matrix_census(A, sel, cfg, &cache);
    store_cache_if_any(cache, cache_path);
    write_text(out_csv, obstruct::census_csv(rep));
    write_text(out_summary, obstruct::census_summary_json(rep));
    std::cout << obstruct::census_summary_json(rep);
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InternalError& e) {
    std::cerr << "internal correctness failure: " << e.what() << "\n";
    return 4;
  } catch (const UndeterminedError& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return 3;
  } catch (const MathError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
