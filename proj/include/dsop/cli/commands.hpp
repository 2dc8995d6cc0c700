#pragma once

#include <random>
#include <string>
#include <vector>

#include "dsop/assoc.hpp"
#include "dsop/cli/config.hpp"
#include "dsop/cli/report.hpp"
#include "dsop/markov.hpp"
#include "dsop/sobolev.hpp"

namespace dsop::cli {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check-order", "orth", "zeros", "assoc", "quadrature", "markov", "verify"};
  return names;
}

inline json coeffs_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

inline std::string poly_norm1(const Poly& p) { return to_string(norm1(p)); }

inline Report start(const std::string& cmd, const Config& c) {
  Report r;
  r.command = cmd;
  r.config = echo(c);
  r.provenance = provenance(c);
  return r;
}

// ---------------------------------------------------------------------------

inline Report run_check_order(const Config& c) {
  Report r = start("check-order", c);
  const SobolevProduct sp = c.product();
  const OrderVerdict& v = sp.verdict();
  r.results["ordered"] = v.ordered;
  r.results["verdict"] = v.describe();
  json arr = json::array();
  for (const auto& p : v.arrangement) arr.push_back({{"c", to_string(p.r)}, {"order", p.nu}});
  r.results["arrangement"] = arr;
  if (v.witness) {
    r.results["witness"] = {{"c", to_string(v.witness->r)}, {"order", v.witness->nu}};
    r.results["witness_hull"] = v.witness_hull.describe();
  }
  Table t{"check_order", {"key", "value"}, {}};
  t.add({"verdict", v.ordered ? "ordered" : "not ordered"});
  t.add({"certificate", v.describe()});
  r.tables.push_back(std::move(t));
  return r;
}

inline Report run_orth(const Config& c) {
  Report r = start("orth", c);
  SobolevSeq seq(c.product(), c.nmax);
  Table t{"orth", {"n", "i", "coeff"}, {}};
  json polys = json::array();
  for (int n = 0; n <= c.nmax; ++n) {
    const Poly& s = seq[n];
    polys.push_back({{"n", n}, {"S", "S_" + std::to_string(n) + " = " + to_string(s)}, {"coeffs", coeffs_json(s)}});
    for (int i = 0; i <= s.degree(); ++i) t.add({std::to_string(n), std::to_string(i), to_string(s[i])});
  }
  r.results["polynomials"] = polys;
  r.tables.push_back(std::move(t));
  return r;
}

inline Report run_zeros(const Config& c) {
  Report r = start("zeros", c);
  const SobolevProduct sp = c.product();
  if (!sp.masses_outside()) throw domain_error("zeros: mass points must lie outside [-1, 1]");
  const unsigned prec = c.precision_bits;
  SobolevSeq seq(sp, c.nmax);
  Table t{"zeros", {"n", "kind", "value_re", "value_im", "enclosure_lo", "enclosure_hi"}, {}};
  json reports = json::array();
  const std::string zero = "0";
  for (int n = 1; n <= c.nmax; ++n) {
    const ZeroReport zr = zero_report(sp, seq[n], prec);
    for (const auto* v : {&zr.interior, &zr.attracted, &zr.other_real})
      for (const auto& e : *v)
        t.add({std::to_string(n), kind_name(e.kind), fmt(e.value, prec), zero, to_string(e.lo), to_string(e.hi)});
    for (const auto& z : zr.complex_values)
      t.add({std::to_string(n), "complex", fmt(z.real(), prec), fmt(z.imag(), prec), "", ""});
    reports.push_back({{"n", n},
                       {"interior", zr.interior.size()},
                       {"attracted", zr.attracted.size()},
                       {"other_real", zr.other_real.size()},
                       {"complex", zr.complex_count},
                       {"sign_changes", zr.sign_change_count},
                       {"all_simple", zr.all_simple()},
                       {"asymptotic_shape", zr.asymptotic_shape(sp.N())}});
  }
  r.results["reports"] = reports;
  if (c.nmax >= 1) {
    const auto n0 = find_n0(seq, c.nmax, prec);
    r.results["n0"] = n0 ? json(*n0) : json(nullptr);
  }
  r.tables.push_back(std::move(t));
  return r;
}

inline Report run_assoc(const Config& c) {
  Report r = start("assoc", c);
  AssocContext ctx(c.product(), c.nmax + c.k);
  const int k = c.k, d = ctx.product().d();
  Table t{"assoc", {"k", "n", "kind", "i", "value"}, {}};
  json polys = json::array();
  for (int n = 0; n <= c.nmax; ++n) {
    const Poly s = assoc_Snk(ctx, n, k);
    polys.push_back({{"n", n}, {"coeffs", coeffs_json(s)}});
    for (int i = 0; i <= s.degree(); ++i)
      t.add({std::to_string(k), std::to_string(n), "coeff", std::to_string(i), to_string(s[i])});
  }
  r.results["k"] = k;
  r.results["polynomials"] = polys;
  json rec = json::array();
  for (int n = 0; n <= c.nmax; ++n) {
    const RecurrenceCheck lr = verify_long_recurrence(ctx, n, k);
    json row{{"n", n}, {"relation", "long"}, {"residual_norm1", poly_norm1(lr.residual)}, {"in_range", lr.in_range}};
    if (!lr.warning.empty()) row["warning"] = lr.warning;
    rec.push_back(row);
    t.add({std::to_string(k), std::to_string(n), "long_residual_norm1", "", poly_norm1(lr.residual)});
    if (k >= 2) {
      const RecurrenceCheck sr = verify_strel(ctx, n, k);
      json srow{{"n", n}, {"relation", "structure"}, {"residual_norm1", poly_norm1(sr.residual)}, {"in_range", sr.in_range}};
      if (!sr.warning.empty()) srow["warning"] = sr.warning;
      rec.push_back(srow);
      t.add({std::to_string(k), std::to_string(n), "strel_residual_norm1", "", poly_norm1(sr.residual)});
    }
  }
  r.results["d"] = d;
  r.results["residuals"] = rec;
  r.tables.push_back(std::move(t));
  return r;
}

inline Report run_quadrature(const Config& c) {
  Report r = start("quadrature", c);
  AssocContext ctx(c.product(), c.nmax);
  const unsigned prec = c.precision_bits;
  const QuadratureRule q = christoffel(ctx, c.nmax, prec);
  const int d = ctx.product().d(), N = ctx.product().N();
  Table t{"quadrature", {"n", "i", "node", "lambda", "s2plus"}, {}};
  for (size_t i = 0; i < q.nodes.size(); ++i)
    t.add({std::to_string(c.nmax), std::to_string(i), fmt(q.nodes[i], prec), fmt(q.lambdas[i], prec),
           fmt(q.s2plus_at_nodes[i], prec)});
  r.results["n"] = c.nmax;
  r.results["nodes"] = q.nodes.size();
  r.results["positive_count"] = q.positive_count();
  r.results["positive_bound"] = fmt(c.nmax - (d + N) / 2.0);
  r.results["total_mass"] = fmt(q.total_mass, prec);
  r.results["sum_lambda_s2plus"] = fmt(q.apply(Poly::constant(Rational(1))), prec);
  r.tables.push_back(std::move(t));
  return r;
}

inline Report run_markov(const Config& c) {
  Report r = start("markov", c);
  if (c.k < 1) throw precondition_error("markov: needs k >= 1");
  const unsigned prec = c.precision_bits;
  const std::vector<int> ns = c.n_range();
  int top = c.nmax;
  for (int n : ns) top = std::max(top, n);
  AssocContext ctx(c.product(), top + c.k);
  ctx.product().require_ordered("markov");
  const RateReport rep = convergence_report(ctx, c.k, c.complex_points(), ns, prec);
  Table t{"rates", {"k", "z_re", "z_im", "n", "error", "ratio", "root_test", "predicted"}, {}};
  json pts = json::array();
  for (size_t p = 0; p < rep.points.size(); ++p) {
    for (size_t i = 0; i < ns.size(); ++i) {
      std::string ratio = i + 1 < ns.size() && rep.ratios[p][i] ? fmt(*rep.ratios[p][i]) : "";
      std::string root = rep.at_floor[p][i] ? "" : fmt(root_of(rep.errors[p][i], ns[i]));
      t.add({std::to_string(c.k), c.points[p].re, c.points[p].im, std::to_string(ns[i]),
             fmt(rep.errors[p][i], prec) + (rep.at_floor[p][i] ? "*" : ""), ratio, root, fmt(rep.predicted[p])});
    }
    pts.push_back({{"re", c.points[p].re},
                   {"im", c.points[p].im},
                   {"predicted_ratio", fmt(rep.predicted[p])},
                   {"root_test", rep.root_test[p] ? json(fmt(*rep.root_test[p])) : json(nullptr)},
                   {"root_test_n", rep.root_test_n[p] ? json(*rep.root_test_n[p]) : json(nullptr)}});
  }
  r.results["points"] = pts;
  r.results["phi_inv_norm"] = fmt(rep.phi_inv_norm);
  r.results["phi_norm_inv"] = fmt(rep.phi_norm_inv);
  const auto rm = rep.root_test_max();
  r.results["root_test_max"] = rm ? json(fmt(*rm)) : json(nullptr);
  r.results["crosscheck_relative_diff"] = fmt(rep.crosscheck_diff);
  r.results["floor_marker"] = "errors marked * are below 2^(32-prec) and excluded from fits";
  r.tables.push_back(std::move(t));
  return r;
}

// ---------------------------------------------------------------------------

/// Runs the property suite on the configured product.
inline Report run_verify(const Config& c) {
  Report r = start("verify", c);
  const SobolevProduct sp = c.product();
  sp.require_ordered("verify");
  const unsigned prec = c.precision_bits;
  const int nmax = c.nmax, d = sp.d(), N = sp.N();
  const int k = std::max(1, c.k);
  AssocContext ctx(sp, nmax + 4);
  const BigFloat half_tol = BigFloat::pow2(-static_cast<long>(prec / 2), prec);

  {
    bool ok = true;
    for (int n = 0; n <= nmax; ++n) ok = ok && ctx.S(n).degree() == n && ctx.S(n).is_monic();
    r.check("S_n monic of degree n", ok, "n <= " + std::to_string(nmax));
  }
  {
    bool ok = true;
    for (int n = d + 1; n <= nmax; ++n) ok = ok && quasi_orthogonality_check(sp, ctx.S(n), n);
    r.check("quasi-orthogonality of order d", ok, "n in [" + std::to_string(d + 1) + ", " + std::to_string(nmax) + "]");
  }
  {
    bool ok = true;
    std::string worst;
    for (int n = std::max(1, N); n <= nmax; ++n) {
      const int sc = count_sign_changes_in(ctx.S(n), -1, 1);
      if (sc < n - N) {
        ok = false;
        worst = "n = " + std::to_string(n) + ": " + std::to_string(sc);
      }
    }
    r.check("at least n-N sign changes on (-1,1)", ok, worst);
  }
  {
    const OrthoBasis& Q = ctx.Q(4);
    bool ok = true;
    for (int kk = 1; kk <= 3; ++kk)
      for (int n = 0; n <= nmax; ++n) {
        const Poly s = assoc_Snk(ctx, n, kk);
        ok = ok && s.degree() == n && s.leading() == Q.norms2[static_cast<size_t>(kk - 1)];
      }
    r.check("leading coefficient of S^[k]_n is |Q_{k-1}|^2", ok, "k <= 3");
  }
  {
    bool ok = true;
    for (int kk = 0; kk <= 3; ++kk)
      for (int n = 0; n <= std::min(nmax, 8); ++n) ok = ok && assoc_Qnk(ctx, n, kk) == assoc_Qnk_recurrence(ctx, n, kk);
    r.check("Q^[k]_n definition equals recurrence", ok);
  }
  {
    bool ok = true;
    json below = json::array();
    for (int kk = 0; kk <= 3; ++kk)
      for (int n = 0; n <= nmax; ++n) {
        const RecurrenceCheck lr = verify_long_recurrence(ctx, n, kk);
        if (lr.in_range) {
          ok = ok && lr.residual.is_zero();
        } else {
          below.push_back({{"n", n}, {"k", kk}, {"residual_zero", lr.residual.is_zero()}});
        }
      }
    r.check("long recurrence residual is zero for n >= 2d-1", ok);
    r.results["long_recurrence_below_range"] = below;
  }
  {
    bool ok = true;
    for (int kk = 2; kk <= 3; ++kk)
      for (int n = std::max(0, d - 1); n <= nmax; ++n) ok = ok && verify_strel(ctx, n, kk).residual.is_zero();
    r.check("structure relation residual is zero for n >= d-1", ok);
  }

  const int nq = nmax;
  if (nq - N >= 1) {
    const QuadratureRule q = christoffel(ctx, nq, prec);
    const double bound = nq - (d + N) / 2.0;
    r.check("positive Christoffel coefficients >= n-(d+N)/2", q.positive_count() >= bound,
            std::to_string(q.positive_count()) + " vs " + fmt(bound));
    const BigFloat s = q.apply(Poly::constant(Rational(1)));
    r.check("sum of lambda S2+ equals the total mass", abs(s - q.total_mass) <= half_tol * max(BigFloat(1L, prec), abs(q.total_mass)));
    const MomentTable& m = ctx.rho_moments(3 * nq + 8);
    auto err = [&](const BigPoly& T) {
      return abs(q.apply(T) - integrate_moments(T * q.S2plus, m, prec));
    };
    const int deg = 2 * nq - d - N - 1;
    if (deg >= 0) {
      std::mt19937_64 rng(20240601);
      bool ok = true;
      for (int t = 0; t < 10; ++t) {
        std::vector<Rational> cs;
        for (int i = 0; i <= deg; ++i) cs.emplace_back(static_cast<long>(rng() % 21) - 10);
        const Poly T(std::move(cs));
        ok = ok && err(to_bigfloat(T, prec)) <= half_tol * BigFloat(Rational(1) + norm1(T), prec);
      }
      r.check("quadrature exact for deg T <= 2n-d-N-1", ok, "deg " + std::to_string(deg));
    }
    if (nq - d >= 0) {
      const BigPoly T = q.S1 * to_bigfloat(Poly::monomial(nq - d, Rational(1)), prec);
      const BigFloat e = err(T);
      r.check("quadrature fails at deg T = 2n-d-N (negative control)", e > BigFloat::pow2(-static_cast<long>(prec / 4), prec),
              "error " + fmt(e, prec));
    }
  }

  std::vector<Complex> pts;
  for (const auto& z : c.complex_points()) {
    bool near = distance_to_interval(z) < BigFloat::from_double(0.25, prec);
    for (const auto& mt : sp.masses()) near = near || compare(abs(z - Complex(BigFloat(mt.c, prec))), Rational(1, 10)) < 0;
    if (!near) pts.push_back(z);
  }
  if (pts.empty()) pts.push_back(Complex(BigFloat(Rational(1, 2), prec), BigFloat(1L, prec)));
  r.results["verify_points"] = pts.size();

  const int nr = std::max(std::max(0, d - 1), nmax - k);
  if (nr + k - N >= 1) {
    const QuadratureRule q = christoffel(ctx, nr + k, 2 * prec);
    bool pf = true, rem = true;
    for (const auto& z : pts) {
      const Complex a = partial_fraction_R1(ctx, q, k, z), b = direct_R1(ctx, q, k, z);
      pf = pf && abs(a - b) <= half_tol * max(BigFloat(1L, prec), abs(b));
      const RemainderCheck rc = remainder_identity_check(ctx, q, nr, k, z);
      rem = rem && abs(rc.diff) <= half_tol * max(abs(rc.lhs), abs(rc.rhs));
    }
    r.check("partial fractions equal the direct quotient", pf, "n = " + std::to_string(nr) + ", k = " + std::to_string(k));
    r.check("remainder identity", rem, "n = " + std::to_string(nr) + ", k = " + std::to_string(k));
  }
  {
    bool ok = true;
    double worst = 0;
    for (const auto& z : pts) {
      const Complex a = markov_k(ctx, k, z, prec);
      const Complex b = markov_eval_quadrature(ctx.mrho().weight, ctx.Q(k - 1)[k - 1], z, prec);
      const double rel = abs(a - b).to_double() / std::max(1.0, abs(a).to_double());
      worst = std::max(worst, rel);
      ok = ok && rel <= (distance_to_interval(z).to_double() >= 0.5 ? 1e-20 : 1e-10);
    }
    r.check("Markov function closed form agrees with quadrature", ok, "max relative difference " + fmt(worst));
  }
  {
    std::vector<int> ns = c.n_range();
    if (ns.size() >= 2) {
      const RateReport rep = convergence_report(ctx, k, pts, ns, prec);
      bool ok = true;
      for (size_t p = 0; p < pts.size(); ++p) {
        const BigFloat thresh = rep.errors[p][0] / 10L;
        for (size_t i = 1; i < ns.size(); ++i) {
          ok = ok && rep.errors[p][i].sign() > 0;
          if (rep.errors[p][i - 1] < thresh && !rep.at_floor[p][i]) ok = ok && rep.errors[p][i] < rep.errors[p][i - 1];
        }
      }
      r.check("approximation errors decrease once small", ok);
      json info = json::array();
      for (size_t p = 0; p < pts.size(); ++p)
        info.push_back({{"z", fmt(pts[p].real(), prec) + " + " + fmt(pts[p].imag(), prec) + "i"},
                        {"last_ratio", rep.ratios[p].empty() || !rep.ratios[p].back() ? json(nullptr) : json(fmt(*rep.ratios[p].back()))},
                        {"predicted_ratio", fmt(rep.predicted[p])},
                        {"root_test", rep.root_test[p] ? json(fmt(*rep.root_test[p])) : json(nullptr)},
                        {"inverse_phi", fmt(std::sqrt(rep.predicted[p]))}});
      r.results["rates"] = info;
    }
  }

  Table t{"verify", {"assertion", "pass", "detail"}, {}};
  for (const auto& a : r.assertions) t.add({a.name, a.pass ? "pass" : "FAIL", a.detail});
  r.results["all_pass"] = r.all_pass();
  r.tables.push_back(std::move(t));
  return r;
}

inline Report run(const std::string& cmd, const Config& c) {
  validate(c);
  if (cmd == "check-order") return run_check_order(c);
  if (cmd == "orth") return run_orth(c);
  if (cmd == "zeros") return run_zeros(c);
  if (cmd == "assoc") return run_assoc(c);
  if (cmd == "quadrature") return run_quadrature(c);
  if (cmd == "markov") return run_markov(c);
  if (cmd == "verify") return run_verify(c);
  throw parse_error("unknown command '" + cmd + "'");
}

/// Process exit code for an exception escaping run().
inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const parse_error*>(&e)) return 2;
  if (dynamic_cast<const domain_error*>(&e) || dynamic_cast<const precondition_error*>(&e) ||
      dynamic_cast<const argument_error*>(&e) || dynamic_cast<const precision_error*>(&e) ||
      dynamic_cast<const decomposition_error*>(&e))
    return 3;
  return 4;
}

}  // namespace dsop::cli
