// opert: command-line front end for the 1-3 perturbation library.
//
//   opert families [--show NAME --alpha/--mu X --lambda1/--t2 Y]
//   opert check     (--input DOC | --family NAME ...)
//   opert decompose (--input DOC | --family NAME ...) [--mu1 X]
//   opert sweep     --family NAME [--alpha/--mu X] (--values a,b,c | --from a --to b --step h)
//   opert jacobi    (--input DOC | --family NAME ...) [--size n] [--darboux] [--mu1 X]
//
// Exit status: 0 success, 1 domain failure (structured diagnostic on
// stderr), 2 usage or input error.
#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "opert/opert.hpp"
#include "opert/serialize.hpp"

namespace {

using namespace opert;

constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string precision = "exact";
  double tol = 1e-10;
  std::size_t n_max = 20;
  std::string format;  // empty: the command's default
  std::string seed_file;
};

struct FamilyArgs {
  std::string name;
  std::string alpha, mu, lambda1, t2;
};

struct ProblemArgs {
  std::string input;
  FamilyArgs family;
  std::string mu1;
  std::size_t size = 3;
  bool darboux = false;
};

struct SweepArgs {
  FamilyArgs family;
  std::vector<std::string> values;
  std::string from, to, step;
};

/// A command result: the document, a verdict and an optional table view
/// used by the csv and table formats.
struct Output {
  Json doc;
  bool ok = true;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::optional<Json> diagnostic;
};

// ---------------------------------------------------------------- input

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::string json_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

template <Scalar T>
FamilySpec<T> family_from_strings(const std::string& name, const std::string& parameter, const std::string& free) {
  FamilySpec<T> spec;
  spec.kind = parse_family(name);
  switch (spec.kind) {
    case FamilyKind::Laguerre:
      spec.parameter = parse_scalar<T>(parameter.empty() ? "2" : parameter);
      spec.free = parse_scalar<T>(free.empty() ? "1" : free);
      break;
    case FamilyKind::GeneralizedHermite:
      spec.parameter = parse_scalar<T>(parameter.empty() ? "1/2" : parameter);
      spec.free = parse_scalar<T>(free.empty() ? "2" : free);
      break;
    default:
      if (!parameter.empty()) throw UsageError(std::string(name) + " takes no family parameter");
      spec.free = parse_scalar<T>(free.empty() ? "1" : free);
  }
  return spec;
}

template <Scalar T>
FamilySpec<T> family_from_args(const FamilyArgs& a) {
  const FamilyKind kind = parse_family(a.name);
  const std::string& parameter = kind == FamilyKind::Laguerre ? a.alpha : a.mu;
  const std::string& free = kind == FamilyKind::Laguerre ? a.lambda1 : a.t2;
  if (kind == FamilyKind::Laguerre && (!a.mu.empty() || !a.t2.empty()))
    throw UsageError("laguerre takes --alpha and --lambda1");
  if (kind != FamilyKind::Laguerre && (!a.alpha.empty() || !a.lambda1.empty()))
    throw UsageError(std::string(family_name(kind)) + " takes --t2" +
                     (kind == FamilyKind::GeneralizedHermite ? " and --mu" : ""));
  return family_from_strings<T>(a.name, parameter, free);
}

/// {"family": "laguerre", "alpha": "2", "lambda1": "1"}; "parameter" and
/// "free" are accepted as generic keys.
template <Scalar T>
FamilySpec<T> family_from_json(const Json& j) {
  const FamilyKind kind = parse_family(j.at("family").get<std::string>());
  const auto pick = [&](std::string_view named, const char* generic) -> std::string {
    if (!named.empty() && j.contains(std::string(named))) return json_text(j.at(std::string(named)));
    if (j.contains(generic)) return json_text(j.at(generic));
    return "";
  };
  return family_from_strings<T>(std::string(family_name(kind)), pick(parameter_name(kind), "parameter"),
                                pick(free_parameter_name(kind), "free"));
}

template <Scalar T>
struct Problem {
  RecurrenceCoefficients<T> rec;
  OneThreeRelation<T> rel;
  std::optional<FamilySpec<T>> family;
};

template <Scalar T>
Json describe(const Problem<T>& p) {
  if (!p.family) return "document";
  Json j;
  j["family"] = family_name(p.family->kind);
  if (auto name = parameter_name(p.family->kind); !name.empty()) j[std::string(name)] = format_scalar(p.family->parameter);
  j[std::string(free_parameter_name(p.family->kind))] = format_scalar(p.family->free);
  return j;
}

/// Recurrence to rec_to and relation to rel_to for family inputs; documents
/// are taken as they are.
template <Scalar T>
Problem<T> load_problem(const ProblemArgs& args, const RunConfig& cfg, std::size_t rec_to, std::size_t rel_to) {
  Problem<T> p;
  Json doc;
  if (!args.input.empty()) {
    if (!args.family.name.empty()) throw UsageError("give either --input or --family, not both");
    doc = read_json(args.input);
    if (doc.contains("family")) p.family = family_from_json<T>(doc);
  } else if (!args.family.name.empty()) {
    p.family = family_from_args<T>(args.family);
  } else {
    throw UsageError("no input: give --input FILE or --family NAME");
  }

  const Tolerance tol{cfg.tol};
  if (p.family) {
    p.rec = family_recurrence(*p.family, rec_to);
  } else {
    try {
      p.rec = recurrence_from_json<T>(doc.at("recurrence"));
    } catch (const Json::exception&) {
      throw Error(ErrorKind::ParseError, "document needs a 'recurrence' object or a 'family'");
    }
  }

  if (!cfg.seed_file.empty()) {
    const auto seeds = seeds_from_json<T>(read_json(cfg.seed_file));
    p.rel = extend_relation(p.rec, seeds, std::min(rel_to, p.rec.n_max() + 1), tol);
  } else if (p.family) {
    p.rel = family_relation(*p.family, rel_to, tol);
  } else {
    if (!doc.contains("relation")) throw Error(ErrorKind::ParseError, "document has no 'relation' (or use --seed-file)");
    p.rel = relation_from_json<T>(doc.at("relation"));
  }
  return p;
}

/// Largest N <= n_max with the recurrence reaching N + rec_extra and the
/// relation N + rel_extra.
template <Scalar T>
std::size_t window(const Problem<T>& p, const RunConfig& cfg, std::size_t rec_extra, std::size_t rel_extra) {
  const long n = std::min({static_cast<long>(cfg.n_max), static_cast<long>(p.rec.n_max()) - static_cast<long>(rec_extra),
                           static_cast<long>(p.rel.n_max()) - static_cast<long>(rel_extra)});
  if (n < 1) throw Error(ErrorKind::Precondition, "input too short for this command");
  return static_cast<std::size_t>(n);
}

template <Scalar T>
Json scalars(const std::vector<T>& xs, std::size_t from = 0) {
  return scalars_to_json(std::vector<T>(xs.begin() + static_cast<long>(std::min(from, xs.size())), xs.end()));
}

Json diagnostic(const Error& e) {
  Json j;
  j["error"] = to_string(e.kind());
  j["message"] = e.what();
  if (e.index()) j["index"] = *e.index();
  return j;
}

// ---------------------------------------------------------------- commands

template <Scalar T>
Output cmd_families(const std::string& show, const FamilyArgs& args, const RunConfig& cfg) {
  Output out;
  if (show.empty()) {
    out.columns = {"name", "parameter", "free_parameter", "polynomial", "conditions"};
    const std::vector<std::vector<std::string>> rows{
        {"laguerre", "alpha", "lambda1", "x^2", "alpha - lambda1 != 0; D_n != 0"},
        {"hermite", "mu", "t2", "x^2", "mu + 1/2 - t2 != 0; D_n != 0"},
        {"chebyshev-t", "", "t2", "x^2 - 1", "2 t2 - 1 != 0; 1 + 2 t2 != 0; n(2 t2 + 1) - 1 != 0; 2n(2 t2 + 1) + (2 t2 - 1) != 0"},
        {"chebyshev-u", "", "t2", "x^2 - 1", "4 t2 - 1 != 0; 3/4 + t2 != 0; n(4 t2 + 1) - 1 != 0; 2n(4 t2 + 1) + (4 t2 - 1) != 0"}};
    out.doc["command"] = "families";
    out.doc["families"] = Json::array();
    for (const auto& r : rows) {
      Json f;
      for (std::size_t i = 0; i < r.size(); ++i) f[out.columns[i]] = r[i];
      out.doc["families"].push_back(f);
    }
    out.rows = rows;
    return out;
  }

  FamilyArgs a = args;
  a.name = show;
  const auto spec = family_from_args<T>(a);
  const Tolerance tol{cfg.tol};
  const std::size_t N = cfg.n_max;
  Problem<T> p;
  p.family = spec;
  out.doc["command"] = "families";
  out.doc["family"] = describe(p);
  out.doc["recurrence"] = to_json(family_recurrence(spec, N));
  const auto m = family_modification(spec);
  out.doc["modification"] = {{"a", format_scalar(m.a)}, {"b", format_scalar(m.b)}, {"k", format_scalar(m.k)}};
  const auto cond = quasi_definiteness_condition(spec, N, tol);
  out.doc["condition"] = {{"ok", cond.ok}};
  if (!cond.ok) {
    out.doc["condition"]["n"] = cond.condition_index;
    out.doc["condition"]["relation_index"] = cond.relation_index;
    out.doc["condition"]["violated"] = cond.condition;
  }
  // A breakdown of the closed forms is reported in the document; the
  // condition, when violated, is the diagnostic.
  try {
    out.doc["relation"] = to_json(family_relation(spec, N, tol));
  } catch (const Error& e) {
    out.doc["relation"] = nullptr;
    out.doc["relation_error"] = diagnostic(e);
    out.ok = false;
    out.diagnostic = diagnostic(e);
  }
  if (!cond.ok) {
    out.ok = false;
    out.diagnostic = Json{{"error", "QuasiDefinitenessFailure"}, {"message", cond.condition}, {"index", cond.relation_index}};
  }
  return out;
}

template <Scalar T>
Output cmd_check(const ProblemArgs& args, const RunConfig& cfg) {
  const auto p = load_problem<T>(args, cfg, cfg.n_max + 1, cfg.n_max + 2);
  const Tolerance tol{cfg.tol};
  const std::size_t N = window(p, cfg, 1, 2);
  Output out;
  out.doc["command"] = "check";
  out.doc["precision"] = std::string(scalar_traits<T>::mode);
  out.doc["input"] = describe(p);
  out.doc["n"] = N;
  const auto verdict = check_orthogonality(p.rec, p.rel, N, tol);
  out.doc["ok"] = verdict.ok;
  if (!verdict.ok) {
    out.ok = false;
    out.doc["failure"] = {{"equation", to_string(verdict.equation)}, {"n", verdict.index}};
    out.diagnostic = Json{{"error", "NotOrthogonal"},
                          {"message", "equation " + std::string(to_string(verdict.equation)) + " fails"},
                          {"equation", to_string(verdict.equation)},
                          {"index", verdict.index}};
  }
  try {
    const auto cs = constant_sequences(p.rec, p.rel, N, tol);
    out.doc["A1"] = format_scalar(cs.A.front());
    out.doc["B1"] = format_scalar(cs.B.front());
    const auto fa = is_constant(cs.A, tol), fb = is_constant(cs.B, tol);
    out.doc["A_constant"] = fa.ok();
    out.doc["B_constant"] = fb.ok();
    if (!fa.ok()) out.doc["A_first_change"] = *fa.index;
    if (!fb.ok()) out.doc["B_first_change"] = *fb.index;
    out.doc["A"] = scalars(cs.A);
    out.doc["B"] = scalars(cs.B);
  } catch (const Error& e) {
    out.doc["sequences"] = diagnostic(e);
  }
  if (verdict.ok) {
    const auto m = recover_modification(p.rec, p.rel, tol);
    out.doc["a"] = format_scalar(m.a);
    out.doc["b"] = format_scalar(m.b);
    out.doc["k"] = format_scalar(m.k);
    out.doc["v1"] = format_scalar(consistent_v1(p.rec, p.rel));
  }
  return out;
}

template <Scalar T>
Output cmd_decompose(const ProblemArgs& args, const RunConfig& cfg) {
  const auto p = load_problem<T>(args, cfg, cfg.n_max + 1, cfg.n_max + 2);
  const Tolerance tol{cfg.tol};
  const std::size_t N = window(p, cfg, 1, 2);
  Output out;
  out.doc["command"] = "decompose";
  out.doc["precision"] = std::string(scalar_traits<T>::mode);
  out.doc["input"] = describe(p);
  out.doc["n"] = N;

  std::vector<T> candidates;
  if (!args.mu1.empty()) {
    const T mu1 = parse_scalar<T>(args.mu1);
    if (equal(mu1, p.rel.s(1), tol)) throw UsageError("--mu1 must differ from s_1 = " + format_scalar(p.rel.s(1)));
    if (is_zero(mu1, tol)) throw UsageError("--mu1 must be nonzero");
    candidates.push_back(mu1);
  } else {
    const auto adm = admissible_mu1(p.rec, p.rel, tol);
    if (adm.unconstrained) throw UsageError("every mu_1 passes the first test here; give --mu1");
    candidates = adm.values;
    out.doc["admissible_mu1"] = scalars(candidates);
  }

  std::optional<Error> last;
  for (const auto& mu1 : candidates) {
    try {
      const auto d = decompose_iterative(p.rec, p.rel, mu1, N, tol);
      out.doc["iterative"] = true;
      out.doc["mu1"] = format_scalar(mu1);
      out.doc["x1"] = format_scalar(d.x1());
      out.doc["x2"] = format_scalar(d.x2());
      out.doc["scale1"] = format_scalar(d.step1.scale);
      out.doc["scale2"] = format_scalar(d.step2.scale);
      out.doc["mu"] = scalars(d.mu(), 1);
      out.doc["lambda"] = scalars(d.lambda(), 1);
      out.doc["C"] = scalars(d.C);
      out.doc["D"] = scalars(d.D);
      out.columns = {"n", "mu", "lambda", "C", "D"};
      for (std::size_t n = 0; n <= N + 1; ++n) {
        const auto cell = [](const std::vector<T>& xs, std::size_t i, bool have) {
          return have && i < xs.size() ? format_scalar(xs[i]) : std::string();
        };
        out.rows.push_back({std::to_string(n), cell(d.mu(), n, n >= 1), cell(d.lambda(), n, n >= 1),
                            cell(d.C, n - 1, n >= 1), cell(d.D, n, true)});
      }
      return out;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Precondition) throw UsageError(e.what());
      last = e;
    }
  }
  out.ok = false;
  out.doc["iterative"] = false;
  Json reason;
  if (last) {
    reason = {{"reason", last->what()}};
    if (last->index()) reason["n"] = *last->index();
    out.diagnostic = diagnostic(*last);
  } else {
    reason = {{"reason", "no admissible mu_1"}};
    out.diagnostic = Json{{"error", "NotIterative"}, {"message", "no admissible mu_1"}};
  }
  out.doc["not_iterative"] = reason;
  return out;
}

template <Scalar T>
Json report(const IdentityReport<T>& r) {
  return {{"window", r.window}, {"max_deviation", format_scalar(r.max_deviation)}, {"ok", r.ok}};
}

template <Scalar T>
Output cmd_jacobi(const ProblemArgs& args, const RunConfig& cfg) {
  const std::size_t n = args.size;
  if (n == 0) throw UsageError("--size must be positive");
  const auto p = load_problem<T>(args, cfg, n + 3, n + 3);
  const Tolerance tol{cfg.tol};
  Output out;
  out.doc["command"] = "jacobi";
  out.doc["precision"] = std::string(scalar_traits<T>::mode);
  out.doc["input"] = describe(p);
  out.doc["size"] = n;

  const auto steps = truncated_transform_steps(p.rec, p.rel, n);
  out.doc["JP"] = to_json(steps.JP);
  out.doc["M"] = to_json(steps.M);
  out.doc["G"] = to_json(steps.G);
  out.doc["JQ"] = to_json(steps.JQ);

  const auto JQ = build_jacobi(transformed_coefficients(p.rec, p.rel, n - 1), n);
  const auto m = recover_modification(p.rec, p.rel, tol);
  const auto N = factor_N(p.rec, p.rel, m.a, m.b, n);
  out.doc["N"] = to_json(N);
  const auto christoffel = verify_christoffel_identity(steps.JP, steps.M, N, m.a, m.b, tol);
  const auto quadratic = verify_quadratic_identity(JQ, steps.M, N, m.a, m.b, tol);
  const auto intertwining = verify_intertwining(steps.JP, JQ, steps.M, tol);
  const bool same = equal_on_window(steps.JQ, JQ, n, tol);
  out.doc["residuals"] = {{"JP2_NM", report(christoffel)},
                          {"JQ2_MN", report(quadratic)},
                          {"MJP_JQM", report(intertwining)},
                          {"JQ_equals_transformed", same}};
  out.ok = christoffel.ok && quadratic.ok && intertwining.ok && same;

  if (args.darboux) {
    std::optional<T> mu1;
    if (!args.mu1.empty()) {
      mu1 = parse_scalar<T>(args.mu1);
    } else {
      const auto adm = admissible_mu1(p.rec, p.rel, tol);
      if (!adm.values.empty()) mu1 = adm.values.front();
    }
    if (!mu1) throw Error(ErrorKind::NotIterative, "no admissible mu_1 for the LU/UL chain");
    const auto d = decompose_iterative(p.rec, p.rel, *mu1, n, tol);
    Json chain = Json::array();
    auto J = steps.JP;
    for (const auto* step : {&d.step1, &d.step2}) {
      const auto L = unit_lower_bidiagonal(step->mu, n);
      const auto f = darboux_factor(J, step->x_star, L, step->mu[n], tol);
      chain.push_back({{"x", format_scalar(step->x_star)}, {"L", to_json(L)}, {"U", to_json(f.U)}, {"result", to_json(f.result)}});
      J = f.result;
    }
    const bool matches = equal_on_window(J, steps.JQ, n, tol);
    out.doc["darboux"] = {{"mu1", format_scalar(*mu1)}, {"steps", chain}, {"matches_JQ", matches}};
    out.ok = out.ok && matches;
  }

  out.columns.push_back("row");
  for (std::size_t j = 0; j < n; ++j) out.columns.push_back("c" + std::to_string(j));
  const auto dense = steps.JQ.dense();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (const auto& x : dense[i]) row.push_back(format_scalar(x));
    out.rows.push_back(row);
  }
  if (!out.ok) out.diagnostic = Json{{"error", "IdentityMismatch"}, {"message", "a matrix identity does not hold"}};
  return out;
}

template <Scalar T>
std::vector<T> sweep_values(const SweepArgs& a) {
  std::vector<T> xs;
  if (!a.values.empty() && (!a.from.empty() || !a.to.empty()))
    throw UsageError("give either --values or --from/--to/--step");
  for (const auto& v : a.values)
    if (!v.empty()) xs.push_back(parse_scalar<T>(v));
  if (!a.from.empty() || !a.to.empty()) {
    if (a.from.empty() || a.to.empty() || a.step.empty()) throw UsageError("--from, --to and --step go together");
    const T from = parse_scalar<T>(a.from), to = parse_scalar<T>(a.to), step = parse_scalar<T>(a.step);
    if (!(step > T(0))) throw UsageError("--step must be positive");
    for (T x = from; x <= to; x += step) {
      xs.push_back(x);
      if (xs.size() > 100000) throw UsageError("range too long");
    }
  }
  return xs;
}

template <Scalar T>
std::vector<std::string> sweep_row(FamilySpec<T> spec, std::size_t N, const Tolerance& tol) {
  std::vector<std::string> row{format_scalar(spec.free)};
  try {
    const auto rep = quasi_definiteness_condition(spec, N, tol);
    if (rep.ok) {
      row.insert(row.end(), {"ok", "", "", ""});
    } else {
      row.insert(row.end(), {"breakdown", std::to_string(rep.condition_index), std::to_string(rep.relation_index), rep.condition});
    }
  } catch (const Error& e) {
    row.insert(row.end(), {"invalid", "", "", e.what()});
  }
  return row;
}

template <Scalar T>
Output cmd_sweep(const SweepArgs& args, const RunConfig& cfg) {
  if (args.family.name.empty()) throw UsageError("sweep needs --family");
  const auto base = family_from_args<T>(args.family);
  const auto values = sweep_values<T>(args);
  const Tolerance tol{cfg.tol};
  Output out;
  out.columns = {std::string(free_parameter_name(base.kind)), "status", "n", "relation_index", "condition"};

  // Parameter points are independent; evaluate them in batches and keep
  // the input order.
  const std::size_t batch = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < values.size(); start += batch) {
    std::vector<std::future<std::vector<std::string>>> jobs;
    for (std::size_t i = start; i < std::min(values.size(), start + batch); ++i) {
      auto spec = base;
      spec.free = values[i];
      jobs.push_back(std::async(std::launch::async, sweep_row<T>, spec, cfg.n_max, tol));
    }
    for (auto& j : jobs) out.rows.push_back(j.get());
  }

  out.doc["command"] = "sweep";
  out.doc["family"] = family_name(base.kind);
  if (auto name = parameter_name(base.kind); !name.empty()) out.doc[std::string(name)] = format_scalar(base.parameter);
  out.doc["n_max"] = cfg.n_max;
  out.doc["rows"] = Json::array();
  for (const auto& r : out.rows) {
    Json j;
    for (std::size_t i = 0; i < r.size(); ++i) j[out.columns[i]] = r[i];
    out.doc["rows"].push_back(j);
  }
  return out;
}

// ---------------------------------------------------------------- output

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string cell_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "";
  if (j.is_array()) {
    std::string s;
    for (const auto& x : j) s += (s.empty() ? "" : " ") + cell_text(x);
    return s;
  }
  return j.dump();
}

bool is_matrix(const Json& j) { return j.is_object() && j.contains("size") && j.contains("bands"); }

std::vector<std::vector<std::string>> dense_cells(const Json& m) {
  const auto n = m.at("size").get<std::size_t>();
  std::vector<std::vector<std::string>> a(n, std::vector<std::string>(n, "0"));
  for (const auto& [key, values] : m.at("bands").items()) {
    const long d = std::stol(key);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const std::size_t i = d >= 0 ? k : k + static_cast<std::size_t>(-d);
      const std::size_t c = d >= 0 ? k + static_cast<std::size_t>(d) : k;
      a[i][c] = cell_text(values[k]);
    }
  }
  return a;
}

std::string aligned(const std::vector<std::vector<std::string>>& rows, const std::string& indent) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    os << indent;
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << r[i];
      if (i + 1 < r.size()) os << std::string(width[i] - r[i].size() + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (j.is_object() && !is_matrix(j)) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j);
  }
}

std::string render(const Output& o, const std::string& format) {
  if (format == "json") return o.doc.dump(2) + "\n";
  std::ostringstream os;
  if (format == "csv") {
    if (!o.columns.empty()) {
      std::vector<std::string> lines;
      const auto line = [](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_cell(cells[i]);
        return s;
      };
      os << line(o.columns) << '\n';
      for (const auto& r : o.rows) os << line(r) << '\n';
      return os.str();
    }
    std::vector<std::pair<std::string, Json>> kv;
    flatten(o.doc, "", kv);
    os << "key,value\n";
    for (const auto& [k, v] : kv) os << csv_cell(k) << ',' << csv_cell(cell_text(v)) << '\n';
    return os.str();
  }
  // table
  std::vector<std::pair<std::string, Json>> kv;
  Json scalars_only = o.doc;
  if (!o.columns.empty()) {
    for (const char* key : {"rows", "families", "mu", "lambda", "C", "D"}) scalars_only.erase(key);
  }
  flatten(scalars_only, "", kv);
  std::vector<std::vector<std::string>> pairs;
  for (const auto& [k, v] : kv) {
    if (is_matrix(v)) {
      os << aligned(pairs, "");
      pairs.clear();
      os << k << ":\n" << aligned(dense_cells(v), "  ");
    } else {
      pairs.push_back({k, cell_text(v)});
    }
  }
  os << aligned(pairs, "");
  if (!o.columns.empty()) {
    std::vector<std::vector<std::string>> rows{o.columns};
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    os << '\n' << aligned(rows, "");
  }
  return os.str();
}

template <Scalar T>
Output dispatch(const std::string& command, const ProblemArgs& problem, const SweepArgs& sweep, const std::string& show,
                const RunConfig& cfg) {
  if (command == "families") return cmd_families<T>(show, problem.family, cfg);
  if (command == "check") return cmd_check<T>(problem, cfg);
  if (command == "decompose") return cmd_decompose<T>(problem, cfg);
  if (command == "sweep") return cmd_sweep<T>(sweep, cfg);
  return cmd_jacobi<T>(problem, cfg);
}

void add_family_options(CLI::App* cmd, FamilyArgs& f, bool with_name) {
  if (with_name) cmd->add_option("--family", f.name, "laguerre, hermite, chebyshev-t or chebyshev-u");
  cmd->add_option("--alpha", f.alpha, "Laguerre parameter (default 2)");
  cmd->add_option("--mu", f.mu, "generalized Hermite parameter (default 1/2)");
  cmd->add_option("--lambda1", f.lambda1, "Laguerre free parameter (default 1)");
  cmd->add_option("--t2", f.t2, "Hermite/Chebyshev free parameter (default 2 resp. 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-3 perturbations of orthogonal polynomial sequences"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--precision", cfg.precision, "exact (rationals) or float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "relative tolerance in float mode")->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "largest index examined")->capture_default_str();
  app.add_option("--format", cfg.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--seed-file", cfg.seed_file, "seeds document (s1, s2, s3, t2, t3) to build the relation from");

  ProblemArgs problem;
  SweepArgs sweep;
  std::string show;

  auto* families = app.add_subcommand("families", "list the classical families or show one");
  families->add_option("--show", show, "family to show");
  add_family_options(families, problem.family, false);

  const auto add_problem = [&](CLI::App* cmd) {
    cmd->add_option("-i,--input", problem.input, "input document, '-' for stdin");
    add_family_options(cmd, problem.family, true);
  };
  auto* check = app.add_subcommand("check", "orthogonality verdict, A_n, B_n and (a, b, k)");
  add_problem(check);
  auto* decompose = app.add_subcommand("decompose", "split into two Geronimus steps");
  add_problem(decompose);
  decompose->add_option("--mu1", problem.mu1, "mu_1 of the first step (default: solved for)");
  auto* sweep_cmd = app.add_subcommand("sweep", "quasi-definiteness over a range of the free parameter");
  add_family_options(sweep_cmd, sweep.family, true);
  sweep_cmd->add_option("--values", sweep.values, "comma separated values")->delimiter(',')->allow_extra_args(false);
  sweep_cmd->add_option("--from", sweep.from);
  sweep_cmd->add_option("--to", sweep.to);
  sweep_cmd->add_option("--step", sweep.step);
  auto* jacobi = app.add_subcommand("jacobi", "truncated matrices and identity residuals");
  add_problem(jacobi);
  jacobi->add_option("--size", problem.size, "matrix order")->capture_default_str();
  jacobi->add_flag("--darboux", problem.darboux, "also run the two-step LU/UL chain");
  jacobi->add_option("--mu1", problem.mu1, "mu_1 for the chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const std::string format = !cfg.format.empty() ? cfg.format : command == "sweep" ? "csv" : "json";
  try {
    const Output out = cfg.precision == "exact" ? dispatch<Rational>(command, problem, sweep, show, cfg)
                                                : dispatch<double>(command, problem, sweep, show, cfg);
    std::cout << render(out, format);
    if (out.diagnostic) std::cerr << out.diagnostic->dump() << '\n';
    return out.ok ? 0 : kDomainFailure;
  } catch (const UsageError& e) {
    std::cerr << Json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << diagnostic(e).dump() << '\n';
    return e.kind() == ErrorKind::ParseError ? kUsage : kDomainFailure;
  }
}
