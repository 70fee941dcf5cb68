#include "cli.hpp"

#include "sft/equivalence.hpp"
#include "sft/gyration.hpp"
#include "sft/invariants.hpp"
#include "sft/matrix_io.hpp"
#include "sft/newton.hpp"
#include "sft/niep.hpp"
#include "sft/poly_matrix.hpp"
#include "sft/series.hpp"
#include "sft/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace sft::cli {

namespace {

using nlohmann::json;

struct Ctx {
  bool as_json = false;
  unsigned long long seed = 1;
  std::ostream &out;
  std::ostream &err;

  void emit(const json &j) const { out << j.dump(2) << '\n'; }
};

// A matrix argument is a file path or inline JSON rows such as [[1,2],[0,1]].
IntMatrix load_int(const std::string &arg) {
  if (!arg.empty() && (arg[0] == '[' || arg[0] == '{') &&
      !std::filesystem::exists(arg))
    return int_matrix_from_json_any(parse_json_text(arg));
  return read_int_matrix(arg);
}

PolyMatrix load_poly(const std::string &arg) {
  if (!arg.empty() && (arg[0] == '[' || arg[0] == '{') &&
      !std::filesystem::exists(arg)) {
    json j = parse_json_text(arg);
    if (j.is_array()) // bare rows
      j = {{"rows", j.size()},
           {"cols", j.empty() || !j[0].is_array() ? 0 : j[0].size()},
           {"entries", j}};
    return poly_matrix_from_json(j);
  }
  return read_poly_matrix(arg);
}

json load_json(const std::string &path) {
  return parse_json_text(read_file(path));
}

Ring parse_ring(const std::string &s) {
  if (s == "z" || s == "Z")
    return Ring::Z;
  if (s == "zplus" || s == "z+" || s == "Z+")
    return Ring::Zplus;
  throw ParseError("ring must be 'z' or 'zplus', got '" + s + "'");
}

Side parse_side(const std::string &s) {
  if (s == "right")
    return Side::Right;
  if (s == "left")
    return Side::Left;
  throw ParseError("side must be 'right' or 'left', got '" + s + "'");
}

Rational parse_rational(const std::string &s) {
  try {
    Rational q(s);
    if (q.get_den() == 0)
      throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument &) {
    throw ParseError("expected a rational number, got '" + s + "'");
  }
}

std::vector<Rational> parse_rational_list(const std::string &s) {
  std::vector<Rational> out;
  std::string tok;
  std::stringstream in(s);
  while (in >> tok) {
    std::stringstream parts(tok);
    std::string piece;
    while (std::getline(parts, piece, ','))
      if (!piece.empty())
        out.push_back(parse_rational(piece));
  }
  return out;
}

Word parse_word(const std::string &s) {
  Word w;
  for (const auto &q : parse_rational_list(s)) {
    if (!is_integral(q) || sgn(q) < 0 || !q.get_num().fits_uint_p())
      throw ParseError("edge symbols must be nonnegative integers");
    w.push_back(static_cast<std::uint32_t>(q.get_num().get_ui()));
  }
  return w;
}

std::string show(const IntMatrix &m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

std::string show(const PolyMatrix &m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? ", " : "") << m(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

template <class V> std::string join(const V &v, const char *sep = " ") {
  std::ostringstream os;
  bool first = true;
  for (const auto &x : v) {
    if (!first)
      os << sep;
    first = false;
    os << x;
  }
  return os.str();
}

json json_list(const std::vector<Integer> &v) {
  json j = json::array();
  for (const auto &x : v)
    j.push_back(to_json(x));
  return j;
}

json json_list(const std::vector<Rational> &v) {
  json j = json::array();
  for (const auto &x : v)
    j.push_back(to_json(x));
  return j;
}

// det(I - tA) with its integer linear factors (1 - r·t) pulled out.
std::string factored(const IntPoly &q) {
  if (q.degree() <= 0)
    return q.str();
  std::vector<std::pair<Rational, std::size_t>> roots =
      rational_roots(CandidateSpectrum::from_det(q));
  std::sort(roots.begin(), roots.end(),
            [](const auto &x, const auto &y) { return x.first > y.first; });
  std::vector<Integer> rest = q.coeffs();
  std::ostringstream os;
  bool any = false;
  for (const auto &[r, mult] : roots) {
    if (!is_integral(r))
      continue;
    const Integer z = r.get_num();
    for (std::size_t m = 0; m < mult; ++m) {
      // rest = (1 - z t)·s
      std::vector<Integer> s(rest.size() - 1);
      s[0] = rest[0];
      for (std::size_t k = 1; k < s.size(); ++k)
        s[k] = rest[k] + z * s[k - 1];
      rest = std::move(s);
    }
    const Integer az = abs(z);
    os << "(1" << (sgn(z) > 0 ? "-" : "+") << (az == 1 ? "" : az.get_str())
       << "t)";
    if (mult > 1)
      os << "^" << mult;
    any = true;
  }
  IntPoly left(rest);
  if (!any)
    return q.str();
  if (left.degree() > 0)
    os << "(" << left.str() << ")";
  else if (left != IntPoly(1))
    return left.str() + "*" + os.str();
  return os.str();
}

// ---------------------------------------------------------------- invariants

int cmd_invariants_report(const Ctx &c, const std::string &file,
                          std::size_t horizon) {
  IntMatrix a = load_int(file);
  InvariantReport r = invariant_report(a, horizon);
  const std::string fac = factored(r.det_I_tA);
  if (c.as_json) {
    json j{{"det_I_tA", r.det_I_tA.str()},
           {"det_I_tA_factored", fac},
           {"zero_multiplicity", r.zero_multiplicity},
           {"bowen_franks", to_json(r.bowen_franks)},
           {"det_I_A", to_json(r.det_I_A)},
           {"traces", json_list(r.traces)}};
    if (r.primitive)
      j["primitive"] = *r.primitive;
    if (r.period)
      j["period"] = *r.period;
    c.emit(j);
    return kPass;
  }
  c.out << "det(I-tA) = " << r.det_I_tA.str();
  if (fac != r.det_I_tA.str())
    c.out << " = " << fac;
  c.out << "\nzero eigenvalue multiplicity: " << r.zero_multiplicity << "\n"
        << "Bowen-Franks group cok(I-A): " << r.bowen_franks.str() << "\n"
        << "det(I-A) = " << r.det_I_A.get_str() << "\n"
        << "traces 1.." << horizon << ": " << join(r.traces) << "\n";
  if (r.primitive)
    c.out << "primitive: " << (*r.primitive ? "yes" : "no") << ", period "
          << *r.period << "\n";
  return kPass;
}

int cmd_invariants_zeta(const Ctx &c, const std::string &file,
                        std::size_t order) {
  IntMatrix a = load_int(file);
  RationalSeries z = zeta_series(a, order), e = zeta_series_exp(a, order);
  const bool same = z == e;
  if (c.as_json) {
    c.emit({{"zeta", json_list(z.coeffs())}, {"agrees_with_exp_traces", same}});
  } else {
    c.out << "zeta coefficients 0.." << order << ": " << join(z.coeffs())
          << "\n"
          << "reciprocal of det(I-tA) and exp of traces agree: "
          << (same ? "yes" : "no") << "\n";
  }
  return same ? kPass : kFail;
}

int cmd_invariants_newton(const Ctx &c, const std::string &poly, std::size_t n) {
  IntPoly p = IntPoly::parse(poly);
  auto taus = traces_from_poly(p, n);
  IntPoly back = poly_from_traces(
      std::vector<Integer>(taus.begin(), taus.begin() + std::min<std::size_t>(
                                             n, std::max(p.degree(), 0L))));
  const bool ok = back == p || static_cast<long>(n) < p.degree();
  if (c.as_json) {
    c.emit({{"traces", json_list(taus)}, {"round_trip", back.str()}});
  } else {
    c.out << "traces 1.." << n << ": " << join(taus) << "\n"
          << "recovered polynomial: " << back.str() << "\n";
  }
  return ok ? kPass : kFail;
}

// ----------------------------------------------------------------- structure

int cmd_structure(const Ctx &c, const std::string &file, std::size_t higher,
                  std::size_t periodic) {
  IntMatrix a = load_int(file);
  require_nonnegative_square(a, "structure");
  auto core = nondegenerate_core(a);
  auto comps = strong_components(a);
  const bool irr = is_irreducible(a);
  const std::size_t per = period(a);
  auto prim = is_primitive(a);
  json j{{"size", a.rows()},
         {"core_vertices", core.kept},
         {"components", comps},
         {"irreducible", irr},
         {"period", per},
         {"primitive", prim.primitive}};
  if (prim.primitive)
    j["exponent"] = prim.exponent;
  std::optional<CyclicBlockForm> cbf;
  if (irr && a.rows() > 0) {
    cbf = cyclic_block_form(a);
    json blocks = json::array(), products = json::array();
    for (const auto &b : cbf->blocks)
      blocks.push_back(to_json(b));
    json prims = json::array();
    for (const auto &p : cbf->products) {
      products.push_back(to_json(p));
      prims.push_back(is_primitive(p).primitive);
    }
    j["cyclic_block_form"] = {{"permutation", cbf->permutation},
                              {"class_sizes", cbf->class_sizes},
                              {"blocks", blocks},
                              {"products", products},
                              {"products_primitive", prims}};
  }
  IntMatrix hb;
  if (higher) {
    hb = higher_block(a, higher);
    j["higher_block"] = {{"k", higher}, {"matrix", to_json(hb)}};
  }
  std::optional<PeriodData> pd;
  if (periodic) {
    pd = fix_counts(a, periodic);
    j["fix_counts"] = json_list(pd->fix_counts);
    j["least_period_counts"] = json_list(pd->least_period_counts);
  }
  if (c.as_json) {
    c.emit(j);
    return kPass;
  }
  c.out << "size: " << a.rows() << ", nondegenerate core: " << core.kept.size()
        << " vertices\n";
  c.out << "strong components: " << comps.size() << "\n";
  c.out << "irreducible: " << (irr ? "yes" : "no") << "\n";
  c.out << "period: " << per << "\n";
  c.out << "primitive: " << (prim.primitive ? "yes" : "no");
  if (prim.primitive)
    c.out << " (exponent " << prim.exponent << ")";
  c.out << "\n";
  if (cbf && cbf->period > 1) {
    c.out << "cyclic classes: " << join(cbf->class_sizes) << "\n";
    for (std::size_t i = 0; i < cbf->products.size(); ++i)
      c.out << "block product " << i << ": " << show(cbf->products[i])
            << (is_primitive(cbf->products[i]).primitive ? " (primitive)"
                                                         : " (not primitive)")
            << "\n";
  }
  if (higher)
    c.out << "A^[" << higher << "] = " << show(hb) << "\n";
  if (pd) {
    c.out << "fixed points 1.." << periodic << ": " << join(pd->fix_counts)
          << "\n";
    c.out << "least period counts 1.." << periodic << ": "
          << join(pd->least_period_counts) << "\n";
  }
  return kPass;
}

// --------------------------------------------------------------- equivalence

int verdict_exit(const Ctx &c, const Verdict &v, json extra = json::object()) {
  if (c.as_json) {
    extra["verified"] = v.ok();
    if (!v.ok())
      extra["detail"] = v.detail;
    c.emit(extra);
  } else {
    c.out << (v.ok() ? "verified" : "refuted: " + v.detail) << "\n";
  }
  return v.ok() ? kPass : kFail;
}

int cmd_equiv_esse(const Ctx &c, const std::string &fa, const std::string &fb,
                   const std::string &fr, const std::string &fs,
                   const std::string &ring) {
  IntMatrix a = load_int(fa), b = load_int(fb);
  EsseWitness w{load_int(fr), load_int(fs), parse_ring(ring)};
  return verdict_exit(c, verify_esse(a, b, w));
}

int cmd_equiv_se(const Ctx &c, const std::string &fa, const std::string &fb,
                 const std::string &fr, const std::string &fs, std::size_t lag,
                 const std::string &ring) {
  IntMatrix a = load_int(fa), b = load_int(fb);
  SeWitness w{load_int(fr), load_int(fs), lag, parse_ring(ring)};
  return verdict_exit(c, verify_se(a, b, w));
}

int cmd_equiv_chain(const Ctx &c, const std::string &cert,
                    const std::string &ring, bool compress) {
  SseChain chain = chain_from_json(load_json(cert), parse_ring(ring));
  auto v = verify_sse_chain(chain);
  json j{{"lag", v.lag}};
  if (v.verdict) {
    j["source"] = to_json(v.source);
    j["target"] = to_json(v.target);
  } else if (v.failing_edge) {
    j["failing_edge"] = *v.failing_edge + 1;
  }
  std::optional<SeWitness> se;
  if (v.verdict && compress) {
    se = compress_sse_to_se(chain);
    j["se"] = {{"R", to_json(se->R)}, {"S", to_json(se->S)}, {"lag", se->lag}};
  }
  if (c.as_json)
    return verdict_exit(c, v.verdict, j);
  if (v.verdict) {
    c.out << "chain of lag " << v.lag << " from " << show(v.source) << " to "
          << show(v.target) << "\n";
    if (se)
      c.out << "shift equivalence lag " << se->lag << ": R = " << show(se->R)
            << ", S = " << show(se->S) << "\n";
  } else if (v.failing_edge) {
    c.out << "edge " << *v.failing_edge + 1 << " fails\n";
  }
  return verdict_exit(c, v.verdict);
}

int cmd_equiv_maller_shub(const Ctx &c, const std::string &fr,
                          const std::string &fs) {
  EsseWitness w{load_int(fr), load_int(fs), Ring::Z};
  auto ms = maller_shub_witness(w);
  const bool ok = ms.U * ms.M1 == ms.M2 * ms.U;
  if (c.as_json) {
    c.emit({{"U", to_json(ms.U)},
            {"M1", to_json(ms.M1)},
            {"M2", to_json(ms.M2)},
            {"verified", ok}});
  } else {
    c.out << "U = " << show(ms.U) << "\nM1 = " << show(ms.M1)
          << "\nM2 = " << show(ms.M2) << "\nU M1 = M2 U: "
          << (ok ? "yes" : "no") << "\n";
  }
  return ok ? kPass : kFail;
}

int cmd_equiv_extension(const Ctx &c, const std::string &fa,
                        const std::string &fx, const std::string &side) {
  IntMatrix a = load_int(fa), x = load_int(fx);
  auto e = zero_extension(a, x, parse_side(side));
  Verdict v = verify_esse(a, e.matrix, e.witness);
  json j{{"extension", to_json(e.matrix)},
         {"R", to_json(e.witness.R)},
         {"S", to_json(e.witness.S)}};
  if (!c.as_json)
    c.out << "extension = " << show(e.matrix) << "\nR = " << show(e.witness.R)
          << "\nS = " << show(e.witness.S) << "\n";
  return verdict_exit(c, v, j);
}

int cmd_neighbors(const Ctx &c, const std::string &file,
                  const NeighborOptions &opt, bool serial) {
  IntMatrix a = load_int(file);
  NeighborResult r = serial ? esse_neighbors_serial(a, opt) : esse_neighbors(a, opt);
  if (c.as_json) {
    json list = json::array();
    for (const auto &n : r.neighbors)
      list.push_back({{"R", to_json(n.witness.R)},
                      {"S", to_json(n.witness.S)},
                      {"B", to_json(n.B)}});
    c.emit({{"count", r.neighbors.size()},
            {"budget_exceeded", r.budget_exceeded},
            {"neighbors", list}});
  } else {
    for (const auto &n : r.neighbors)
      c.out << "B = " << show(n.B) << "  R = " << show(n.witness.R)
            << "  S = " << show(n.witness.S) << "\n";
    c.out << r.neighbors.size() << " neighbors";
    if (r.budget_exceeded)
      c.out << " (budget exceeded, list is partial)";
    c.out << "\n";
  }
  return r.budget_exceeded ? kBudget : kPass;
}

// ---------------------------------------------------------------------- poly

int cmd_poly_nzc(const Ctx &c, const std::string &file) {
  PolyMatrix a = load_poly(file);
  const bool nzc = is_nzc(a);
  if (c.as_json)
    c.emit({{"nzc", nzc}});
  else
    c.out << (nzc ? "NZC" : "not NZC") << "\n";
  return nzc ? kPass : kFail;
}

int cmd_poly_sharp(const Ctx &c, const std::string &file) {
  PolyMatrix a = load_poly(file);
  auto s = sharp_expand(a);
  const bool ok = verify_sharp(a);
  const IntPoly lhs = det(one_minus(a)), rhs = det_one_minus_tA(s.matrix);
  if (c.as_json) {
    c.emit({{"sharp", to_json(s.matrix)},
            {"det_I_A", lhs.str()},
            {"det_I_tAsharp", rhs.str()},
            {"verified", ok}});
  } else {
    c.out << "A# (" << s.matrix.rows() << "x" << s.matrix.cols()
          << ") = " << show(s.matrix) << "\n"
          << "det(I-A) = " << lhs.str() << "\ndet(I-tA#) = " << rhs.str()
          << "\n";
  }
  return ok ? kPass : kFail;
}

int cmd_poly_flow(const Ctx &c, const std::string &file) {
  PolyMatrix a = load_poly(file);
  auto f = flow_invariants(a);
  if (c.as_json)
    c.emit({{"bowen_franks", to_json(f.bowen_franks)},
            {"det_I_A1", to_json(f.det)}});
  else
    c.out << "Bowen-Franks group cok(I-A(1)): " << f.bowen_franks.str()
          << "\ndet(I-A(1)) = " << f.det.get_str() << "\n";
  return kPass;
}

int cmd_poly_psse(const Ctx &c, const std::string &fr, const std::string &fs,
                  const std::string &outfile) {
  MoveLog log = psse_chain(load_int(fr), load_int(fs));
  ReplayResult rr = replay(log);
  const json lj = to_json(log);
  if (!outfile.empty()) {
    std::ofstream f(outfile);
    if (!f)
      throw ParseError("cannot write '" + outfile + "'");
    f << lj.dump(2) << '\n';
  }
  if (c.as_json) {
    c.emit({{"log", lj}, {"replay_ok", rr.ok}, {"moves", log.moves.size()}});
  } else {
    c.out << "start = " << show(log.start) << "\nend = " << show(log.end)
          << "\n" << log.moves.size() << " moves, replay "
          << (rr.ok ? "ok" : "failed: " + rr.detail) << "\n";
  }
  return rr.ok ? kPass : kFail;
}

int cmd_poly_replay(const Ctx &c, const std::string &file) {
  MoveLog log = move_log_from_json(load_json(file));
  ReplayResult rr = replay(log);
  if (c.as_json) {
    json j{{"ok", rr.ok}, {"steps", rr.steps}};
    if (!rr.ok)
      j["detail"] = rr.detail;
    c.emit(j);
  } else {
    c.out << (rr.ok ? "replay ok" : "replay failed: " + rr.detail) << " ("
          << rr.steps << " of " << log.moves.size() << " moves applied)\n";
  }
  return rr.ok ? kPass : kFail;
}

int cmd_poly_elementary(const Ctx &c, const std::string &cert) {
  SseChain chain = chain_from_json(load_json(cert), Ring::Z);
  auto ee = elementary_equivalence_from_sse(chain);
  if (c.as_json) {
    c.emit({{"E", to_json(ee.E)},
            {"F", to_json(ee.F)},
            {"size", ee.size},
            {"factors", ee.left_factors.size() + ee.right_factors.size()}});
  } else {
    c.out << "E = " << show(ee.E) << "\nF = " << show(ee.F) << "\nsize "
          << ee.size << ", " << ee.left_factors.size() + ee.right_factors.size()
          << " elementary factors\n";
  }
  return kPass;
}

// ---------------------------------------------------------------------- niep

struct SpectrumArgs {
  std::string poly, det, roots, rpoly;
};

CandidateSpectrum load_spectrum(const SpectrumArgs &s) {
  const int given = !s.poly.empty() + !s.det.empty() + !s.roots.empty() +
                    !s.rpoly.empty();
  if (given != 1)
    throw ParseError("give exactly one of --poly, --det, --roots, --rpoly");
  if (!s.poly.empty())
    return CandidateSpectrum::from_poly(IntPoly::parse(s.poly));
  if (!s.det.empty())
    return CandidateSpectrum::from_det(IntPoly::parse(s.det));
  if (!s.roots.empty())
    return CandidateSpectrum::from_roots(parse_rational_list(s.roots));
  auto desc = parse_rational_list(s.rpoly);
  return CandidateSpectrum(std::vector<Rational>(desc.rbegin(), desc.rend()));
}

void add_spectrum_options(CLI::App *app, SpectrumArgs &s) {
  app->add_option("--poly", s.poly, "monic integer polynomial prod(t - l_i)");
  app->add_option("--det", s.det, "det(I - tA) with constant term 1");
  app->add_option("--roots", s.roots, "rational values, comma separated");
  app->add_option("--rpoly", s.rpoly,
                  "rational coefficients of the monic polynomial, descending");
}

int cmd_niep_check(const Ctx &c, const SpectrumArgs &sa, const std::string &ring,
                   std::size_t horizon) {
  SpectrumRing r;
  if (ring == "z" || ring == "Z")
    r = SpectrumRing::Z;
  else if (ring == "dense")
    r = SpectrumRing::Dense;
  else
    throw ParseError("ring must be 'z' or 'dense', got '" + ring + "'");
  CandidateSpectrum spec = load_spectrum(sa);
  SpectrumReport rep = check_conditions(spec, r, horizon);
  if (c.as_json) {
    json j{{"polynomial", spec.str()},
           {"ring", r == SpectrumRing::Z ? "z" : "dense"},
           {"horizon", horizon},
           {"perron", verdict_name(rep.perron.verdict)},
           {"perron_exact", rep.perron.exact},
           {"coefficients_ok", rep.coefficients_ok},
           {"traces_ok", rep.traces_ok()},
           {"jll_min_size", rep.jll_min_size},
           {"traces", json_list(std::vector<Rational>(
                          rep.traces.begin(),
                          rep.traces.begin() +
                              std::min<std::size_t>(rep.traces.size(), 12)))},
           {"ok", rep.ok()}};
    if (rep.net_trace_violation)
      j["net_trace_violation"] = {{"n", *rep.net_trace_violation},
                                  {"value", to_json(rep.net_trace_value)}};
    if (rep.trace_violation)
      j["trace_violation"] = *rep.trace_violation;
    if (rep.growth_violation)
      j["growth_violation"] = {rep.growth_violation->first,
                               rep.growth_violation->second};
    c.emit(j);
  } else {
    c.out << "p(t) = " << spec.str() << "\n";
    c.out << "Perron condition: " << verdict_name(rep.perron.verdict);
    if (!rep.perron.detail.empty())
      c.out << " (" << rep.perron.detail << ")";
    c.out << "\ncoefficients condition: "
          << (rep.coefficients_ok ? "pass" : "fail") << "\n";
    if (r == SpectrumRing::Z) {
      if (rep.net_trace_violation)
        c.out << "net trace condition: fail at n = " << *rep.net_trace_violation
              << " (net trace " << rep.net_trace_value.get_str() << ")\n";
      else
        c.out << "net trace condition: pass up to n = " << horizon << "\n";
    } else {
      if (rep.trace_violation)
        c.out << "condition (i): fail at n = " << *rep.trace_violation << "\n";
      else
        c.out << "condition (i): pass up to n = " << horizon << "\n";
      if (rep.growth_violation)
        c.out << "condition (ii): fail at n = " << rep.growth_violation->first
              << ", k = " << rep.growth_violation->second << "\n";
      else
        c.out << "condition (ii): pass up to nk = " << horizon << "\n";
    }
    c.out << "JLL minimum size: " << rep.jll_min_size << "\n";
  }
  return rep.ok() ? kPass : kFail;
}

int cmd_niep_suleimanova(const Ctx &c, const std::vector<std::string> &vals) {
  std::vector<Rational> lams;
  for (const auto &v : vals)
    for (const auto &q : parse_rational_list(v))
      lams.push_back(q);
  RatMatrix m = suleimanova_realize(lams);
  if (c.as_json) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j)
        row.push_back(to_json(m(i, j)));
      rows.push_back(row);
    }
    c.emit({{"companion", rows}, {"nonnegative", true}});
  } else {
    c.out << "companion = " << m << "\n";
  }
  return kPass;
}

int cmd_niep_inflate(const Ctx &c, const std::string &file, std::size_t p) {
  IntMatrix d = load_int(file);
  IntMatrix a = inflate_period(d, p);
  const IntPoly q = det_one_minus_tA(d), qa = det_one_minus_tA(a);
  if (c.as_json)
    c.emit({{"A", to_json(a)}, {"det_I_tD", q.str()}, {"det_I_tA", qa.str()}});
  else
    c.out << "A = " << show(a) << "\ndet(I-tD) = " << q.str()
          << "\ndet(I-tA) = " << qa.str() << "\n";
  return kPass;
}

int cmd_niep_root_poly(const Ctx &c, const std::string &q, std::size_t p) {
  IntPoly r = spectrum_pth_root_poly(IntPoly::parse(q), p);
  if (c.as_json)
    c.emit({{"poly", r.str()}});
  else
    c.out << r.str() << "\n";
  return kPass;
}

int cmd_niep_jll(const Ctx &c, const std::string &file, std::size_t mm,
                 std::size_t mk) {
  JllResult r = jll_check(load_int(file), mm, mk);
  if (c.as_json) {
    json j{{"ok", r.ok}};
    if (r.violation)
      j["violation"] = {r.violation->first, r.violation->second};
    c.emit(j);
  } else if (r.ok) {
    c.out << "JLL inequalities hold for m <= " << mm << ", k <= " << mk << "\n";
  } else {
    c.out << "JLL inequality fails at m = " << r.violation->first
          << ", k = " << r.violation->second << "\n";
  }
  return r.ok ? kPass : kFail;
}

int cmd_niep_bound(const Ctx &c, const SpectrumArgs &sa, std::size_t max_k) {
  std::size_t b = jll_min_size_bound(load_spectrum(sa), max_k);
  if (c.as_json)
    c.emit({{"jll_min_size", b}});
  else
    c.out << "JLL minimum size: " << b << "\n";
  return kPass;
}

int cmd_niep_laffey(const Ctx &c, const SpectrumArgs &sa, std::size_t n) {
  LaffeyQuantities lq = laffey_quantities(load_spectrum(sa), n);
  if (c.as_json) {
    json j{{"G", lq.G}, {"bound", lq.bound}};
    if (lq.G_exact)
      j["G_exact"] = to_json(*lq.G_exact);
    if (lq.M) {
      j["M"] = to_json(*lq.M);
      j["M_at"] = lq.M_at;
    }
    c.emit(j);
  } else {
    c.out << "G = " << (lq.G_exact ? lq.G_exact->get_str() : std::to_string(lq.G))
          << "\n";
    if (lq.M)
      c.out << "M = " << lq.M->get_str() << " (at n = " << lq.M_at << ")\n";
    else
      c.out << "M: inapplicable\n";
    c.out << "bound: " << lq.bound << "\n";
  }
  return kPass;
}

int cmd_niep_eventual(const Ctx &c, const std::string &file, std::size_t kmax) {
  auto k = eventually_positive(load_int(file), kmax);
  if (c.as_json) {
    json j{{"positive", k.has_value()}};
    if (k)
      j["k"] = *k;
    c.emit(j);
  } else if (k) {
    c.out << "A^" << *k << " is positive\n";
  } else {
    c.out << "undetermined up to k = " << kmax << "\n";
  }
  return k ? kPass : kFail;
}

// ------------------------------------------------------------------ gyration

int cmd_gyration_orbits(const Ctx &c, const std::string &file, std::size_t n) {
  auto t = enumerate_periodic(load_int(file), n);
  std::size_t q = 0;
  for (auto lp : t.least_period)
    q += lp == n;
  if (c.as_json) {
    json reps = json::array();
    for (std::size_t o = 0; o < t.orbits.size(); ++o)
      reps.push_back({{"word", t.points[t.representative[o]]},
                      {"least_period", t.least_period[o]}});
    c.emit({{"points", t.points.size()},
            {"orbits", t.orbits.size()},
            {"least_period_orbits", q},
            {"representatives", reps}});
  } else {
    c.out << "|P_" << n << "| = " << t.points.size() << ", orbits "
          << t.orbits.size() << ", |Q_" << n << "| = " << q << "\n";
    for (std::size_t o = 0; o < t.orbits.size(); ++o)
      c.out << "  " << join(t.points[t.representative[o]], ",")
            << " (period " << t.least_period[o] << ")\n";
  }
  return kPass;
}

struct ActionArgs {
  bool shift = false;
  std::string orbit, code, inverse;
};

int cmd_gyration_action(const Ctx &c, const std::string &file, std::size_t k,
                        const ActionArgs &aa) {
  IntMatrix a = load_int(file);
  PeriodicAction act = identity_action();
  std::string name = "identity";
  if (aa.shift + !aa.orbit.empty() + !aa.code.empty() > 1)
    throw ParseError("give at most one of --shift, --orbit, --code");
  if (aa.shift) {
    act = shift_action();
    name = "shift";
  } else if (!aa.orbit.empty()) {
    act = one_orbit_shift(parse_word(aa.orbit));
    name = "one-orbit shift";
  } else if (!aa.code.empty()) {
    BlockCode f = block_code_from_json(load_json(aa.code));
    if (f.domain != a || f.range != a)
      throw PreconditionError("code must act on the given matrix");
    if (!aa.inverse.empty()) {
      Automorphism alpha{f, block_code_from_json(load_json(aa.inverse))};
      Verdict v = verify_automorphism(alpha);
      if (!v) {
        if (c.as_json)
          c.emit({{"automorphism", false}, {"detail", v.detail}});
        else
          c.out << "not an automorphism: " << v.detail << "\n";
        return kFail;
      }
    } else if (Verdict v = verify_block_code(f); !v) {
      throw PreconditionError("block code: " + v.detail);
    }
    act = code_action(f);
    name = "code";
  }
  GyrationData g = gyration(a, act, k);
  const std::size_t s = sgcc(a, act, k);
  if (c.as_json) {
    c.emit({{"action", name},
            {"level", k},
            {"orbits", g.orbit_count},
            {"gyration", g.g},
            {"sign", g.sign},
            {"sgcc", s}});
  } else {
    c.out << "action: " << name << "\n|Q_" << k << "| = " << g.orbit_count
          << "\ng_" << k << " = " << g.g << " in Z/" << k << "\nsign xi_" << k
          << " = " << g.sign << "\nSGCC_" << k << " = " << s << " in Z/" << k
          << "\n";
  }
  return kPass;
}

int cmd_gyration_crs(const Ctx &c, const std::string &fr, const std::string &fs,
                     std::size_t max_level) {
  IntMatrix R = load_int(fr), S = load_int(fs);
  BlockCode code = conjugacy_from_esse(R, S);
  json levels = json::array();
  bool ok = true;
  for (std::size_t n = 1; n <= max_level; ++n) {
    auto from = enumerate_periodic(code.domain, n);
    auto to = enumerate_periodic(code.range, n);
    auto act = code_action(code);
    auto pm = apply_periodic(act, from, to);
    bool commutes = true;
    for (std::size_t i = 0; i < from.points.size() && commutes; ++i)
      commutes = act(rotate(from.points[i], 1)) ==
                 rotate(to.points[pm.point_map[i]], 1);
    ok = ok && pm.bijective && commutes;
    levels.push_back({{"n", n},
                      {"points", from.points.size()},
                      {"bijective", pm.bijective},
                      {"commutes", commutes}});
    if (!c.as_json)
      c.out << "P_" << n << ": " << from.points.size() << " points, "
            << (pm.bijective ? "bijective" : "not bijective") << ", "
            << (commutes ? "commutes with shift" : "does not commute") << "\n";
  }
  if (c.as_json)
    c.emit({{"code", to_json(code)}, {"levels", levels}, {"ok", ok}});
  return ok ? kPass : kFail;
}

// ---------------------------------------------------------------------- sgc2

int cmd_sgc2(const Ctx &c, const std::string &fr, const std::string &fs,
             const std::string &path, std::size_t triangles) {
  const int modes = (!fr.empty() || !fs.empty()) + !path.empty() + (triangles > 0);
  if (modes != 1)
    throw ParseError("give one of --R/--S, --path, --triangles");
  if (!path.empty()) {
    SsePath p{chain_from_json(load_json(path), Ring::Z).edges};
    const int v = path_sgc2(p);
    if (c.as_json)
      c.emit({{"edges", p.edges.size()}, {"sgc2", v}});
    else
      c.out << "sgc2 = " << v << " (" << p.edges.size() << " edges)\n";
    return kPass;
  }
  if (triangles > 0) {
    std::mt19937_64 rng(c.seed);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < triangles; ++i) {
      Triangle t = random_triangle(rng, 3, -2, 2);
      if (!verify_triangle(t) ||
          (sgc2(t.e1.R, t.e1.S) + sgc2(t.e2.R, t.e2.S)) % 2 !=
              sgc2(t.e3.R, t.e3.S))
        ++failures;
    }
    if (c.as_json)
      c.emit({{"triangles", triangles}, {"seed", c.seed}, {"failures", failures}});
    else
      c.out << triangles << " triangles (seed " << c.seed << "), " << failures
            << " cocycle failures\n";
    return failures ? kFail : kPass;
  }
  if (fr.empty() || fs.empty())
    throw ParseError("--R and --S go together");
  const int v = sgc2(load_int(fr), load_int(fs));
  if (c.as_json)
    c.emit({{"sgc2", v}});
  else
    c.out << "sgc2 = " << v << "\n";
  return kPass;
}

// --------------------------------------------------------------- classify2x2

struct ClassifyArgs {
  long a = 0, b = 0;
  bool counts = false;
  std::string matrix, x, y, transpose;
};

int cmd_classify(const Ctx &c, const ClassifyArgs &ca) {
  TriangularFamily fam{Integer(ca.a), Integer(ca.b)};
  json j{{"a", ca.a}, {"b", ca.b}, {"modulus", to_json(fam.modulus())}};
  std::ostringstream text;
  bool any = false, refuted = false;
  if (ca.counts) {
    auto cc = class_counts(fam);
    j["sim_classes"] = cc.sim_classes;
    j["se_classes"] = cc.se_classes;
    text << "SIM classes: " << cc.sim_classes << ", SE classes: "
         << cc.se_classes << "\n";
    any = true;
  }
  if (!ca.matrix.empty()) {
    auto tr = reduce_to_triangular(load_int(ca.matrix), fam);
    j["x"] = to_json(tr.x);
    j["U"] = to_json(tr.U);
    text << "similar over Z to [[" << ca.a << ", " << tr.x.get_str() << "], [0, "
         << ca.b << "]] via U = " << show(tr.U) << "\n";
    any = true;
  }
  if (!ca.x.empty() || !ca.y.empty()) {
    if (ca.x.empty() || ca.y.empty())
      throw ParseError("--x and --y go together");
    Rational x = parse_rational(ca.x), y = parse_rational(ca.y);
    if (!is_integral(x) || !is_integral(y))
      throw ParseError("--x and --y must be integers");
    const bool sim = sim_z_equivalent(fam, x.get_num(), y.get_num());
    const bool se = se_z_equivalent(fam, x.get_num(), y.get_num());
    j["sim_z"] = sim;
    j["se_z"] = se;
    refuted = refuted || !se;
    text << "SIM-Z: " << (sim ? "yes" : "no") << ", SE-Z: " << (se ? "yes" : "no")
         << "\n";
    any = true;
  }
  if (!ca.transpose.empty()) {
    Rational x = parse_rational(ca.transpose);
    if (!is_integral(x))
      throw ParseError("--transpose must be an integer");
    auto t = transpose_se_test(fam, x.get_num());
    if (t) {
      j["se_to_transpose"] = *t;
      refuted = refuted || !*t;
    } else {
      j["se_to_transpose"] = nullptr;
    }
    text << "SE-Z to its transpose: "
         << (t ? (*t ? "yes" : "no") : "undetermined (x not a unit)") << "\n";
    any = true;
  }
  if (!any)
    throw ParseError("nothing to do: give --counts, --matrix, --x/--y or "
                     "--transpose");
  if (c.as_json)
    c.emit(j);
  else
    c.out << text.str();
  return refuted ? kFail : kPass;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Invariants and certificates for shifts of finite type", "sftool"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  unsigned long long seed = 1;
  app.add_flag("--json", json_out, "JSON output");
  app.add_option("--seed", seed, "seed for randomized sweeps");

  std::function<int(const Ctx &)> action;

  // invariants
  auto *inv = app.add_subcommand("invariants", "det(I-tA), Bowen-Franks, traces");
  inv->require_subcommand(1);
  std::string file, file2, fr, fs, fx, cert, ring = "zplus", side = "right",
                                               outfile, text;
  std::size_t horizon = 10, order = 10, lag = 1, level = 1, higher = 0,
              periodic = 0, pp = 1, mm = 4, mk = 4, kmax = 64, triangles = 0;
  {
    auto *s = inv->add_subcommand("report", "invariant report of a matrix");
    s->add_option("file", file)->required();
    s->add_option("--horizon", horizon, "number of traces");
    s->callback([&] {
      action = [&](const Ctx &c) { return cmd_invariants_report(c, file, horizon); };
    });
    auto *z = inv->add_subcommand("zeta", "zeta series by both routes");
    z->add_option("file", file)->required();
    z->add_option("--order", order);
    z->callback([&] {
      action = [&](const Ctx &c) { return cmd_invariants_zeta(c, file, order); };
    });
    auto *n = inv->add_subcommand("newton", "traces of det(I-tA) and back");
    n->add_option("--poly", text, "polynomial with constant term 1")->required();
    n->add_option("--n", horizon);
    n->callback([&] {
      action = [&](const Ctx &c) { return cmd_invariants_newton(c, text, horizon); };
    });
  }

  // structure
  auto *st = app.add_subcommand("structure", "irreducibility, period, blocks");
  st->add_option("file", file)->required();
  st->add_option("--higher", higher, "also print A^[k]");
  st->add_option("--periodic", periodic, "fixed point counts up to n");
  st->callback([&] {
    action = [&](const Ctx &c) { return cmd_structure(c, file, higher, periodic); };
  });

  // equiv
  auto *eq = app.add_subcommand("equiv", "verify equivalence certificates");
  eq->require_subcommand(1);
  {
    auto *e = eq->add_subcommand("esse", "A = RS, B = SR");
    e->add_option("A", file)->required();
    e->add_option("B", file2)->required();
    e->add_option("--R", fr)->required();
    e->add_option("--S", fs)->required();
    e->add_option("--ring", ring);
    e->callback([&] {
      action = [&](const Ctx &c) { return cmd_equiv_esse(c, file, file2, fr, fs, ring); };
    });
    auto *se = eq->add_subcommand("se", "shift equivalence of lag l");
    se->add_option("A", file)->required();
    se->add_option("B", file2)->required();
    se->add_option("--R", fr)->required();
    se->add_option("--S", fs)->required();
    se->add_option("--lag", lag);
    se->add_option("--ring", ring);
    se->callback([&] {
      action = [&](const Ctx &c) {
        return cmd_equiv_se(c, file, file2, fr, fs, lag, ring);
      };
    });
    auto *ch = eq->add_subcommand("chain", "strong shift equivalence chain");
    ch->add_option("cert", cert)->required();
    ch->add_option("--ring", ring);
    auto *compress = ch->add_flag("--compress", "also build the SE witness");
    ch->callback([&, compress] {
      action = [&, compress](const Ctx &c) {
        return cmd_equiv_chain(c, cert, ring, compress->count() > 0);
      };
    });
    auto *ms = eq->add_subcommand("maller-shub", "similar zero extensions");
    ms->add_option("--R", fr)->required();
    ms->add_option("--S", fs)->required();
    ms->callback([&] {
      action = [&](const Ctx &c) { return cmd_equiv_maller_shub(c, fr, fs); };
    });
    auto *ex = eq->add_subcommand("extension", "zero extension with witness");
    ex->add_option("A", file)->required();
    ex->add_option("--x", fx)->required();
    ex->add_option("--side", side);
    ex->callback([&] {
      action = [&](const Ctx &c) { return cmd_equiv_extension(c, file, fx, side); };
    });
  }

  // neighbors
  NeighborOptions nopt;
  bool serial = false, no_dedup = false;
  auto *nb = app.add_subcommand("neighbors", "bounded ESSE neighbour search");
  nb->add_option("file", file)->required();
  nb->add_option("--max-inner", nopt.max_inner);
  nb->add_option("--max-entry", nopt.max_entry);
  nb->add_option("--max-results", nopt.max_results);
  nb->add_option("--budget", nopt.max_candidates, "R matrices examined");
  nb->add_flag("--serial", serial);
  nb->add_flag("--no-dedup", no_dedup);
  nb->callback([&] {
    action = [&](const Ctx &c) {
      nopt.dedup = !no_dedup;
      return cmd_neighbors(c, file, nopt, serial);
    };
  });

  // poly
  auto *po = app.add_subcommand("poly", "polynomial matrices");
  po->require_subcommand(1);
  {
    auto *n = po->add_subcommand("nzc", "membership in NZC");
    n->add_option("file", file)->required();
    n->callback([&] { action = [&](const Ctx &c) { return cmd_poly_nzc(c, file); }; });
    auto *s = po->add_subcommand("sharp", "graph expansion A#");
    s->add_option("file", file)->required();
    s->callback([&] { action = [&](const Ctx &c) { return cmd_poly_sharp(c, file); }; });
    auto *f = po->add_subcommand("flow", "Bowen-Franks group and det at t = 1");
    f->add_option("file", file)->required();
    f->callback([&] { action = [&](const Ctx &c) { return cmd_poly_flow(c, file); }; });
    auto *p = po->add_subcommand("psse", "move log from R, S");
    p->add_option("--R", fr)->required();
    p->add_option("--S", fs)->required();
    p->add_option("--out", outfile, "write the log here");
    p->callback([&] {
      action = [&](const Ctx &c) { return cmd_poly_psse(c, fr, fs, outfile); };
    });
    auto *r = po->add_subcommand("replay", "replay a move log");
    r->add_option("file", file)->required();
    r->callback([&] { action = [&](const Ctx &c) { return cmd_poly_replay(c, file); }; });
    auto *e = po->add_subcommand("elementary", "E, F from an SSE chain over Z");
    e->add_option("cert", cert)->required();
    e->callback([&] {
      action = [&](const Ctx &c) { return cmd_poly_elementary(c, cert); };
    });
  }

  // niep
  SpectrumArgs sa;
  std::string nring = "z";
  std::vector<std::string> values;
  auto *ni = app.add_subcommand("niep", "spectral conditions");
  ni->require_subcommand(1);
  {
    auto *ck = ni->add_subcommand("check", "necessary conditions");
    add_spectrum_options(ck, sa);
    ck->add_option("--ring", nring, "z or dense");
    ck->add_option("--horizon", horizon);
    ck->callback([&, ck] {
      horizon = ck->count("--horizon") ? horizon : 64;
      action = [&](const Ctx &c) { return cmd_niep_check(c, sa, nring, horizon); };
    });
    auto *su = ni->add_subcommand("suleimanova", "companion realization");
    su->add_option("values", values)->required()->allow_extra_args();
    su->callback([&] {
      action = [&](const Ctx &c) { return cmd_niep_suleimanova(c, values); };
    });
    auto *in = ni->add_subcommand("inflate", "period-p inflation of D");
    in->add_option("file", file)->required();
    in->add_option("--p", pp)->required();
    in->callback([&] {
      action = [&](const Ctx &c) { return cmd_niep_inflate(c, file, pp); };
    });
    auto *rp = ni->add_subcommand("root-poly", "q(t^p)");
    rp->add_option("--det", text)->required();
    rp->add_option("--p", pp)->required();
    rp->callback([&] {
      action = [&](const Ctx &c) { return cmd_niep_root_poly(c, text, pp); };
    });
    auto *jl = ni->add_subcommand("jll", "JLL inequalities of a matrix");
    jl->add_option("file", file)->required();
    jl->add_option("--max-m", mm);
    jl->add_option("--max-k", mk);
    jl->callback([&] {
      action = [&](const Ctx &c) { return cmd_niep_jll(c, file, mm, mk); };
    });
    auto *bd = ni->add_subcommand("bound", "JLL minimum size");
    add_spectrum_options(bd, sa);
    bd->add_option("--max-k", mk);
    bd->callback([&, bd] {
      mk = bd->count("--max-k") ? mk : 16;
      action = [&](const Ctx &c) { return cmd_niep_bound(c, sa, mk); };
    });
    auto *lf = ni->add_subcommand("laffey", "G and M");
    add_spectrum_options(lf, sa);
    lf->add_option("--horizon", horizon);
    lf->callback([&] {
      action = [&](const Ctx &c) { return cmd_niep_laffey(c, sa, horizon); };
    });
    auto *ev = ni->add_subcommand("eventual", "eventual positivity");
    ev->add_option("file", file)->required();
    ev->add_option("--kmax", kmax);
    ev->callback([&] {
      action = [&](const Ctx &c) { return cmd_niep_eventual(c, file, kmax); };
    });
  }

  // gyration
  ActionArgs aa;
  auto *gy = app.add_subcommand("gyration", "periodic points and automorphisms");
  gy->require_subcommand(1);
  {
    auto *ob = gy->add_subcommand("orbits", "periodic orbit table");
    ob->add_option("file", file)->required();
    ob->add_option("--level", level)->required();
    ob->callback([&] {
      action = [&](const Ctx &c) { return cmd_gyration_orbits(c, file, level); };
    });
    auto *ac = gy->add_subcommand("action", "g_k, sign and SGCC_k");
    ac->add_option("file", file)->required();
    ac->add_option("--level", level)->required();
    ac->add_flag("--shift", aa.shift, "the shift map");
    ac->add_option("--orbit", aa.orbit, "shift the orbit of this edge word only");
    ac->add_option("--code", aa.code, "block code JSON");
    ac->add_option("--inverse", aa.inverse, "inverse block code JSON");
    ac->callback([&] {
      action = [&](const Ctx &c) { return cmd_gyration_action(c, file, level, aa); };
    });
    auto *cr = gy->add_subcommand("crs", "c(R,S) on periodic points");
    cr->add_option("--R", fr)->required();
    cr->add_option("--S", fs)->required();
    cr->add_option("--level", level, "highest level checked");
    cr->callback([&] {
      action = [&](const Ctx &c) { return cmd_gyration_crs(c, fr, fs, level); };
    });
  }

  // sgc2
  auto *sg = app.add_subcommand("sgc2", "sgc2 of an edge, a path, or a sweep");
  sg->add_option("--R", fr);
  sg->add_option("--S", fs);
  sg->add_option("--path", cert, "SSE path JSON");
  sg->add_option("--triangles", triangles, "cocycle sweep size");
  sg->callback([&] {
    action = [&](const Ctx &c) { return cmd_sgc2(c, fr, fs, cert, triangles); };
  });

  // classify2x2
  ClassifyArgs ca;
  auto *cl = app.add_subcommand("classify2x2", "2x2 matrices with eigenvalues a, b");
  cl->add_option("--a", ca.a)->required();
  cl->add_option("--b", ca.b)->required();
  cl->add_flag("--counts", ca.counts);
  cl->add_option("--matrix", ca.matrix);
  cl->add_option("--x", ca.x);
  cl->add_option("--y", ca.y);
  cl->add_option("--transpose", ca.transpose);
  cl->callback([&] {
    action = [&](const Ctx &c) { return cmd_classify(c, ca); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  Ctx ctx{json_out, seed, out, err};
  try {
    if (!action)
      throw ParseError("no command given");
    return action(ctx);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceededError &e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const NotRealizableError &e) {
    err << "not realizable: " << e.what() << "\n";
    return kFail;
  } catch (const InternalError &e) {
    err << "internal error: " << e.what() << "\n";
    return kFail;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

} // namespace sft::cli
