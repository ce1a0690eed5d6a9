#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cache.hpp"
#include "cubicpts/counting.hpp"
#include "cubicpts/parallel.hpp"
#include "cubicpts/quadratic.hpp"
#include "cubicpts/sym2.hpp"
#include "cubicpts/tamagawa.hpp"
#include "cubicpts/zeta.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace cubicpts;
using cubicpts::cli::RowCache;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2, kCacheCorrupt = 3;

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string kind;
  i64 field_disc = 1;
  double b = 0;
  double b_max = 0;
  int steps = 1;
  std::string spacing;
  double tol = 0.05;
  unsigned workers = hardware_workers();
  std::string out;
  std::string format = "csv";
  std::string cache_dir;
  bool no_cache = false;
  std::uint64_t seed = 1;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;
  json meta = json::object();
  bool pass = true;
};

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<i64>());
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  return v.dump();
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  os << "# schema: 1\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << cell(r.at(t.columns[i]));
    os << "\n";
  }
  return os.str();
}

std::string render_json(const Table& t, const Options& o) {
  json j;
  j["schema"] = 1;
  j["kind"] = o.kind;
  j["field_disc"] = o.field_disc;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  if (!t.meta.empty()) j["meta"] = t.meta;
  j["pass"] = t.pass;
  return j.dump(2) + "\n";
}

std::vector<i64> schedule(const Options& o) {
  const bool lin = o.spacing.empty() ? o.kind == "oracle-diff" : o.spacing == "lin";
  std::vector<i64> out;
  if (o.b_max > 0 && o.b_max < o.b) throw CLI::ValidationError("--b-max", "must not be smaller than --b");
  if (o.b_max <= o.b || o.steps <= 1) {
    out.push_back(std::llround(o.b));
  } else {
    for (int i = 0; i < o.steps; ++i) {
      const double f = static_cast<double>(i) / (o.steps - 1);
      const double v = lin ? o.b + (o.b_max - o.b) * f : o.b * std::pow(o.b_max / o.b, f);
      out.push_back(std::llround(v));
    }
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw CLI::ValidationError("schedule", "B schedule must be strictly increasing");
  if (out.front() < 1) throw CLI::ValidationError("--b", "B must be at least 1");
  return out;
}

FieldDescriptor counting_field(i64 disc) {
  if (disc == 1) return rational_field();
  if (disc >= 0 || !is_fundamental_discriminant(disc))
    throw Unsupported("field " + std::to_string(disc) + ": counting needs Q or an imaginary quadratic field");
  auto f = field_invariants(disc);
  if (f.class_number != 1)
    throw Unsupported("field " + std::to_string(disc) + ": counting needs class number one");
  return f;
}

void require_rational(const Options& o) {
  if (o.field_disc != 1) throw Unsupported("kind " + o.kind + " is only defined over Q (--field-disc 1)");
}

double constant(const std::string& name) {
  static const auto cs = predicted_constants();
  return find_constant(cs, name).value;
}

std::string breakdown(const std::map<std::string, i64>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : ";") + k + "=" + std::to_string(v);
  return s;
}

// Computes (or loads) one row, then applies the pass column.
template <class F>
json cached_row(const RowCache& cache, const Options& o, i64 B, F compute) {
  const std::string key = "v1|" + o.kind + "|" + std::to_string(o.field_disc) + "|" + std::to_string(B);
  if (auto hit = cache.get(key)) return json::parse(hit->dump());
  json row = compute();
  cache.put(key, nlohmann::json::parse(row.dump()));
  return row;
}

void mark(Table& t, json row, bool pass) {
  row["pass"] = pass;
  t.pass = t.pass && pass;
  t.rows.push_back(std::move(row));
}

Table run_count(const Options& o, const RowCache& cache, bool whole_V) {
  const auto K = counting_field(o.field_disc);
  Table t;
  t.columns = {"B", "count", "predicted", "rel_err", "locus_breakdown", "pass"};
  for (i64 B : schedule(o)) {
    json row = cached_row(cache, o, B, [&] {
      auto r = whole_V ? count_V(K, B, o.workers) : parametrized_count_U(K, B, o.workers);
      return json{{"B", B}, {"count", r.total}, {"predicted", r.predicted_main}, {"rel_err", r.relative_error},
                  {"locus_breakdown", breakdown(r.by_locus)}};
    });
    const double e = row["rel_err"].get<double>();
    mark(t, row, e <= o.tol);
  }
  return t;
}

Table run_oracle_diff(const Options& o) {
  const auto K = counting_field(o.field_disc);
  auto Bs = schedule(o);
  Table t;
  t.columns = {"B", "count", "predicted", "rel_err", "locus_breakdown", "pass"};
  std::optional<BruteHistogram> hist;
  if (K.is_rational()) hist = brute_force_histogram_Q(Bs.back(), o.workers);
  for (i64 B : Bs) {
    auto fast = count_V(K, B, o.workers);
    std::map<std::string, i64> slow;
    if (hist) {
      for (Locus l : v_loci()) slow[locus_name(l)] = hist->count(l, B);
    } else {
      slow = brute_force_count(K, B, LocusFilter::V, o.workers).by_locus;
    }
    i64 slow_total = 0;
    std::string diff;
    for (const auto& [k, v] : slow) {
      slow_total += v;
      if (fast.by_locus[k] != v) diff += (diff.empty() ? "" : ";") + k + "=" + std::to_string(fast.by_locus[k] - v);
    }
    const bool same = diff.empty() && slow_total == fast.total;
    const double rel = slow_total ? std::fabs(static_cast<double>(fast.total - slow_total)) / slow_total : 0.0;
    mark(t,
         json{{"B", B}, {"count", fast.total}, {"predicted", slow_total}, {"rel_err", rel},
              {"locus_breakdown", same ? std::string("exact") : diff}},
         same);
  }
  return t;
}

Table run_lattice(const Options& o) {
  const auto K = counting_field(o.field_disc);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> kap(1.0, 3.0);
  std::uniform_int_distribution<i64> norm(1, 5);
  LatticeBox box;
  if (K.is_rational()) {
    box.kappa_per_place = {kap(rng)};
    box.a2_norm = norm(rng);
    box.a3_norm = norm(rng);
  } else {
    const double k = std::sqrt(kap(rng));
    box.kappa_per_place = {k, k};
  }
  auto Bs = schedule(o);
  Table t;
  t.columns = {"B", "count", "predicted", "rel_err", "locus_breakdown", "pass"};
  for (i64 B : Bs) {
    box.B = static_cast<double>(B);
    auto c = lattice_count_M1(box, K);
    const double rel = std::fabs(c.deviation) / c.main_term;
    char dev[64];
    std::snprintf(dev, sizeof dev, "deviation=%.6g", c.deviation);
    mark(t, json{{"B", B}, {"count", c.count}, {"predicted", c.main_term}, {"rel_err", rel}, {"locus_breakdown", dev}},
         rel <= o.tol);
  }
  t.meta["kappa"] = box.kappa();
  t.meta["a2_norm"] = box.a2_norm;
  t.meta["a3_norm"] = box.a3_norm;
  if (Bs.size() >= 2) {
    std::vector<double> x(Bs.begin(), Bs.end());
    auto s = lattice_deviation_slope(box, K, x);
    t.meta["deviation_slope"] = s.slope;
    t.pass = t.pass && s.slope <= 1.1;
  }
  return t;
}

Table run_zeta(const Options& o) {
  Table t;
  t.columns = {"name", "value", "reference", "rel_err", "pass"};
  auto add = [&](const std::string& name, double v, double ref) {
    const double rel = std::fabs(v - ref) / std::fabs(ref);
    mark(t, json{{"name", name}, {"value", v}, {"reference", ref}, {"rel_err", rel}}, rel <= o.tol);
  };
  if (o.field_disc == 1) {
    add("zeta(2)", riemann_zeta(2).value, boost::math::zeta(2.0));
    add("zeta(3)", riemann_zeta(3).value, boost::math::zeta(3.0));
    for (double s : {3.0, 6.0, 9.0})
      add("Z_Q_P1(" + std::to_string(static_cast<int>(s)) + ")", height_zeta_P1(rational_field(), s, 0.0).value,
          4 * boost::math::zeta(s - 1) / boost::math::zeta(s));
    add("c_P1_Q", schanuel_constant(rational_field()), 2 / boost::math::zeta(2.0));
    return t;
  }
  if (!is_fundamental_discriminant(o.field_disc))
    throw Unsupported("field " + std::to_string(o.field_disc) + " is not a fundamental discriminant");
  const auto K = field_invariants(o.field_disc);
  for (double s : {1.5, 2.0, 3.0})
    add("zeta_K(" + std::to_string(s).substr(0, 3) + ")", dedekind_zeta(s, o.field_disc).value,
        boost::math::zeta(s) * dirichlet_L(s, o.field_disc).value);
  t.meta["class_number"] = K.class_number;
  t.meta["regulator"] = K.regulator;
  t.meta["L(1)"] = dirichlet_L(1, o.field_disc).value;
  if (K.is_imaginary() && K.class_number == 1) {
    t.meta["c_P1"] = schanuel_constant(K);
    t.meta["Z_P1(3)"] = height_zeta_P1(K, 3.0, 0.0).value;
  }
  return t;
}

Table run_constants() {
  Table t;
  t.columns = {"name", "value", "tail_bound"};
  for (const auto& c : predicted_constants()) t.rows.push_back(json{{"name", c.name}, {"value", c.value}, {"tail_bound", c.tail_bound}});
  return t;
}

Table run_tamagawa(const Options& o) {
  require_rational(o);
  Table t;
  t.columns = {"place", "y0", "y1", "value", "scaled", "rel_err", "pass"};
  const double p1 = tau_inf_P1().value;
  mark(t, json{{"place", "real P1"}, {"y0", 1}, {"y1", 1}, {"value", p1}, {"scaled", p1}, {"rel_err", std::fabs(p1 - 4) / 4}},
       std::fabs(p1 - 4) / 4 <= o.tol);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<i64> U(-60, 60);
  const int n = std::max(o.steps, 1);
  const double base9 = tau_inf_sym2_fiber(1, 1, 9).value, base6 = tau_inf_sym2_fiber(1, 1, 6).value;
  for (int i = 0; i < n; ++i) {
    i64 a, b;
    do {
      a = U(rng);
      b = U(rng);
    } while (!(a || b) || gcd64(a, b) != 1);
    const double H = static_cast<double>(std::max(std::llabs(a), std::llabs(b)));
    const double v = tau_inf_V_fiber(a, b).value, s = H * H * H * v;
    mark(t, json{{"place", "real V fiber"}, {"y0", a}, {"y1", b}, {"value", v}, {"scaled", s}, {"rel_err", std::fabs(s / 4 - 1)}},
         std::fabs(s / 4 - 1) <= o.tol);
    if (H <= 12) {
      for (int target : {9, 6}) {
        const double w = tau_inf_sym2_fiber(a, b, target).value;
        const double sc = std::pow(H, target) * w, base = target == 9 ? base9 : base6;
        mark(t,
             json{{"place", "real sym2 fiber " + std::to_string(target)}, {"y0", a}, {"y1", b}, {"value", w},
                  {"scaled", sc}, {"rel_err", std::fabs(sc / base - 1)}},
             std::fabs(sc / base - 1) <= o.tol);
      }
    }
  }
  for (i64 p : {2L, 3L, 5L, 7L, 97L}) {
    auto d = tau_p_P1(p, 8);
    const double lim = 1 + 1.0 / static_cast<double>(p);
    mark(t,
         json{{"place", d.place}, {"y0", 1}, {"y1", 1}, {"value", d.value}, {"scaled", d.value},
              {"rel_err", std::fabs(d.value - lim) / lim}},
         std::fabs(d.value - lim) <= std::pow(static_cast<double>(p), -7));
  }
  return t;
}

Table run_sym2_v(const Options& o, const RowCache& cache) {
  require_rational(o);
  const double c = constant("c_Sym2V");
  Table t;
  t.columns = {"B", "N_Z", "N_offZ", "total", "predicted", "rel_err", "pass"};
  for (i64 B : schedule(o)) {
    json row = cached_row(cache, o, B, [&] {
      auto r = count_sym2_V(B, o.workers);
      const double pred = c * std::pow(static_cast<double>(B), 3);
      return json{{"B", B}, {"N_Z", r.N_Z()}, {"N_offZ", r.N_offZ()}, {"total", r.total()}, {"predicted", pred},
                  {"rel_err", std::fabs(static_cast<double>(r.N_Z()) - pred) / pred}};
    });
    const double e = row["rel_err"].get<double>();
    mark(t, row, e <= o.tol);
  }
  return t;
}

Table run_sym2_pairs(const Options& o, const RowCache& cache, bool product) {
  require_rational(o);
  const double c = constant(product ? "c_Sym2P1xP1" : "c_Sym2P1_Q");
  Table t;
  t.columns = {"B", "count", "predicted", "rel_err", "locus_breakdown", "pass"};
  for (i64 B : schedule(o)) {
    json row = cached_row(cache, o, B, [&] {
      i64 total;
      std::map<std::string, i64> parts;
      if (product) {
        auto r = count_sym2_P1xP1(B, o.workers);
        total = r.total();
        parts = {{"type1", r.type1}, {"rational_first", r.rational_first}, {"quadratic_first", r.quadratic_first},
                 {"same_field", r.same_field}};
      } else {
        auto r = count_sym2_P1(B);
        total = r.total();
        parts = {{"type1", r.type1}, {"type2", r.type2}};
      }
      const double pred = c * std::pow(static_cast<double>(B), 3);
      return json{{"B", B}, {"count", total}, {"predicted", pred},
                  {"rel_err", std::fabs(static_cast<double>(total) - pred) / pred}, {"locus_breakdown", breakdown(parts)}};
    });
    const double e = row["rel_err"].get<double>();
    mark(t, row, e <= o.tol);
  }
  return t;
}

Table run_l_sums(const Options& o) {
  require_rational(o);
  auto Bs = schedule(o);
  std::vector<double> Ys(Bs.begin(), Bs.end());
  auto fit = fit_L_sums(Ys, o.workers);
  Table t;
  t.columns = {"Y", "S1", "S2", "discriminants"};
  for (const auto& r : fit.rows)
    t.rows.push_back(json{{"Y", static_cast<i64>(r.Y)}, {"S1", r.S1}, {"S2", r.S2}, {"discriminants", static_cast<i64>(r.discriminants)}});
  if (fit.rows.size() >= 2) {
    t.meta["s1_exponent"] = fit.s1_exponent;
    t.meta["s2_slope"] = fit.s2_slope;
    t.meta["s2_intercept"] = fit.s2_intercept;
    t.pass = fit.s1_exponent >= 0.4 && fit.s1_exponent <= 0.6;
  }
  return t;
}

Table dispatch(const Options& o, const RowCache& cache) {
  if (o.kind == "count-v") return run_count(o, cache, true);
  if (o.kind == "count-u") return run_count(o, cache, false);
  if (o.kind == "oracle-diff") return run_oracle_diff(o);
  if (o.kind == "lattice") return run_lattice(o);
  if (o.kind == "zeta") return run_zeta(o);
  if (o.kind == "constants") return run_constants();
  if (o.kind == "tamagawa") return run_tamagawa(o);
  if (o.kind == "sym2-v") return run_sym2_v(o, cache);
  if (o.kind == "sym2-p1") return run_sym2_pairs(o, cache, false);
  if (o.kind == "sym2-p1xp1") return run_sym2_pairs(o, cache, true);
  if (o.kind == "l-sums") return run_l_sums(o);
  throw Unsupported("unknown kind " + o.kind);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Point counts on the surface t0^2 t2 = t1^2 t3 and its symmetric square"};
  app.add_option("--kind", o.kind, "Experiment to run")
      ->required()
      ->check(CLI::IsMember({"count-v", "count-u", "oracle-diff", "lattice", "zeta", "constants", "tamagawa", "sym2-v",
                             "sym2-p1", "sym2-p1xp1", "l-sums"}));
  app.add_option("--field-disc", o.field_disc, "Field discriminant, 1 for Q");
  app.add_option("--b", o.b, "First height bound")->check(CLI::PositiveNumber);
  app.add_option("--b-max", o.b_max, "Last height bound");
  app.add_option("--steps", o.steps, "Number of bounds in the schedule")->check(CLI::PositiveNumber);
  app.add_option("--spacing", o.spacing, "Schedule spacing (default log, lin for oracle-diff)")
      ->check(CLI::IsMember({"lin", "log"}));
  app.add_option("--tol", o.tol, "Relative tolerance per row")->check(CLI::PositiveNumber);
  app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "Report file (stdout when omitted)");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache-dir", o.cache_dir, "Row cache directory")->envname("CUBICPTS_CACHE_DIR");
  app.add_flag("--no-cache", o.no_cache, "Do not read or write the row cache");
  app.add_option("--seed", o.seed, "Seed for randomised boxes and fibers");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (o.b == 0) o.b = o.kind == "l-sums" ? 1000 : (o.kind == "oracle-diff" ? 1 : 100);
  if (o.kind == "tamagawa" && o.steps == 1) o.steps = 20;

  try {
    RowCache cache;
    if (!o.no_cache) cache = RowCache(std::filesystem::path(o.cache_dir.empty() ? ".cubicpts-cache" : o.cache_dir));
    Table t = dispatch(o, cache);
    const std::string text = o.format == "json" ? render_json(t, o) : render_csv(t);
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::filesystem::path p(o.out);
      if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
      std::ofstream f(p, std::ios::trunc);
      f << text;
      if (!f) {
        std::cerr << "cubicpts: cannot write " << o.out << "\n";
        return kUsage;
      }
    }
    if (!t.pass) std::cerr << "cubicpts: at least one row failed its check\n";
    return t.pass ? kOk : kCheckFailed;
  } catch (const cli::CacheCorrupt& e) {
    std::cerr << "cubicpts: " << e.what() << "\n";
    return kCacheCorrupt;
  } catch (const Unsupported& e) {
    std::cerr << "cubicpts: unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "cubicpts: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "cubicpts: unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cubicpts: " << e.what() << "\n";
    return kUsage;
  }
}
