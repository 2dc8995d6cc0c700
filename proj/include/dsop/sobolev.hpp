#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/gram.hpp"
#include "dsop/exactpoly/linear.hpp"
#include "dsop/exactpoly/polynomial.hpp"
#include "dsop/exactpoly/roots.hpp"
#include "dsop/mass.hpp"
#include "dsop/measures.hpp"

namespace dsop {

// ---------------------------------------------------------------------------
// Sequential ordering

/// A point r with a derivative order nu.
struct OrderedPair {
  Rational r;
  int nu = 0;

  friend bool operator==(const OrderedPair& a, const OrderedPair& b) { return a.r == b.r && a.nu == b.nu; }
  friend bool operator<(const OrderedPair& a, const OrderedPair& b) {
    return a.nu != b.nu ? a.nu < b.nu : a.r < b.r;
  }
};

inline std::string to_string(const OrderedPair& p) {
  return "(" + to_string(p.r) + "," + std::to_string(p.nu) + ")";
}

/// Convex hull of a subset of the real line: empty, or an interval whose
/// ends may be open (from an open base set) or closed (from points).
struct Hull {
  bool empty = true;
  Rational lo, hi;
  bool lo_closed = false, hi_closed = false;

  static Hull none() { return {}; }
  static Hull open(Rational a, Rational b) { return {false, std::move(a), std::move(b), false, false}; }
  static Hull open_unit() { return open(Rational(-1), Rational(1)); }

  bool contains(const Rational& x) const {
    if (empty) return false;
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }

  /// Hull of this set together with the point x.
  Hull with(const Rational& x) const {
    if (empty) return {false, x, x, true, true};
    Hull h = *this;
    if (x < h.lo || (x == h.lo && !h.lo_closed)) {
      h.lo = x;
      h.lo_closed = true;
    }
    if (x > h.hi || (x == h.hi && !h.hi_closed)) {
      h.hi = x;
      h.hi_closed = true;
    }
    return h;
  }

  std::string describe() const {
    if (empty) return "{}";
    return std::string(lo_closed ? "[" : "(") + to_string(lo) + ", " + to_string(hi) + (hi_closed ? "]" : ")");
  }
};

struct OrderVerdict {
  bool ordered = false;
  /// Valid arrangement when ordered.
  std::vector<OrderedPair> arrangement;
  /// First pair found inside the running hull when not ordered.
  std::optional<OrderedPair> witness;
  /// Hull that contained the witness.
  Hull witness_hull;

  std::string describe() const {
    std::ostringstream os;
    if (ordered) {
      os << "ordered; arrangement";
      for (const auto& p : arrangement) os << " " << to_string(p);
    } else {
      os << "not ordered; " << (witness ? to_string(*witness) : std::string("?")) << " lies in "
         << witness_hull.describe();
    }
    return os.str();
  }
};

/// True when the given arrangement satisfies both conditions of the
/// definition: non-decreasing orders and every point outside the hull of the
/// base set and the points before it.
inline bool verify_arrangement(const std::vector<OrderedPair>& seq, const Hull& base) {
  Hull h = base;
  for (size_t k = 0; k < seq.size(); ++k) {
    if (k > 0 && seq[k].nu < seq[k - 1].nu) return false;
    if (seq[k].nu < 0) return false;
    if (h.contains(seq[k].r)) return false;
    h = h.with(seq[k].r);
  }
  return true;
}

/// Decides whether the pairs can be arranged into a sequentially-ordered
/// sequence with respect to `base`.
///
/// Levels of equal order are processed in increasing order. Inside a level a
/// point already in the running hull can never be placed; the others are
/// appended nearest-first on each side (ascending when the hull is empty).
inline OrderVerdict check_sequential_order(std::vector<OrderedPair> pairs, const Hull& base) {
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].nu < 0) throw argument_error("check_sequential_order: negative order");
    for (size_t j = 0; j < i; ++j)
      if (pairs[i] == pairs[j]) throw argument_error("check_sequential_order: repeated pair " + to_string(pairs[i]));
  }
  std::sort(pairs.begin(), pairs.end());
  OrderVerdict v;
  Hull h = base;
  size_t i = 0;
  while (i < pairs.size()) {
    size_t j = i;
    while (j < pairs.size() && pairs[j].nu == pairs[i].nu) ++j;
    // pairs[i..j) sorted by r ascending
    if (h.empty) {
      for (size_t t = i; t < j; ++t) {
        v.arrangement.push_back(pairs[t]);
        h = h.with(pairs[t].r);
      }
      // equal points cannot occur within a level
    } else {
      std::vector<OrderedPair> left, right;
      for (size_t t = i; t < j; ++t) {
        if (h.contains(pairs[t].r)) {
          v.witness = pairs[t];
          v.witness_hull = h;
          v.arrangement.clear();
          return v;
        }
        (pairs[t].r < h.lo || (pairs[t].r == h.lo) ? left : right).push_back(pairs[t]);
      }
      std::reverse(left.begin(), left.end());
      for (const auto& p : right) {
        v.arrangement.push_back(p);
        h = h.with(p.r);
      }
      for (const auto& p : left) {
        v.arrangement.push_back(p);
        h = h.with(p.r);
      }
    }
    i = j;
  }
  v.ordered = true;
  return v;
}

// ---------------------------------------------------------------------------
// The product

/// i!/(i-nu)! c^(i-nu): the nu-th derivative of x^i at c.
inline Rational monomial_derivative_at(int i, int nu, const Rational& c) {
  if (i < nu) return Rational(0);
  Rational v(factorial_ratio(i, nu));
  for (int t = 0; t < i - nu; ++t) v *= c;
  return v;
}

/// ∫ f g dμ + Σ_j Σ_i η_{j,i} f^(i)(c_j) g^(i)(c_j).
class SobolevProduct {
 public:
  SobolevProduct() : SobolevProduct(MeasureSpec::lebesgue(), {}) {}

  SobolevProduct(MeasureSpec base, std::vector<MassTerm> masses) : base_(std::move(base)), masses_(std::move(masses)) {
    base_.validate();
    for (const auto& t : masses_) t.validate();
    for (size_t i = 0; i < masses_.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (masses_[i].c == masses_[j].c)
          throw argument_error("sobolev product: mass point " + to_string(masses_[i].c) + " listed twice");
    verdict_ = check_sequential_order(pairs(), Hull::open_unit());
  }

  const MeasureSpec& base() const { return base_; }
  const std::vector<MassTerm>& masses() const { return masses_; }
  int N() const { return static_cast<int>(masses_.size()); }

  /// d = N + Σ d_j
  int d() const {
    int s = N();
    for (const auto& t : masses_) s += t.order;
    return s;
  }

  /// Every (c_j, i) with η_{j,i} > 0.
  std::vector<OrderedPair> pairs() const {
    std::vector<OrderedPair> out;
    for (const auto& t : masses_)
      for (int i = 0; i <= t.order; ++i)
        if (sgn(t.weight(i)) > 0) out.push_back({t.c, i});
    return out;
  }

  const OrderVerdict& verdict() const { return verdict_; }
  bool is_ordered() const { return verdict_.ordered; }

  /// True when every mass lies off [-1, 1].
  bool masses_outside() const {
    return std::all_of(masses_.begin(), masses_.end(), [](const MassTerm& t) { return abs(t.c) > 1; });
  }

  Poly rho() const { return rho_polynomial(masses_); }
  MeasureSpec modified() const { return modified_measure(base_, masses_); }

  /// Throws precondition_error unless the product qualifies for the
  /// asymptotic pipeline.
  void require_ordered(const std::string& who) const {
    if (!masses_outside()) throw precondition_error(who + ": mass points must lie outside [-1, 1]");
    if (!is_ordered()) throw precondition_error(who + ": product is not sequentially ordered (" + verdict_.describe() + ")");
  }

  Rational inner(const Poly& f, const Poly& g) const {
    Rational s = base_.integrate(f * g);
    for (const auto& t : masses_) {
      for (int i = 0; i <= t.order; ++i) {
        const Rational w = t.weight(i);
        if (sgn(w) == 0) continue;
        s += w * f.derivative(i)(t.c) * g.derivative(i)(t.c);
      }
    }
    return s;
  }

 private:
  MeasureSpec base_;
  std::vector<MassTerm> masses_;
  OrderVerdict verdict_;
};

inline Rational sobolev_inner(const Poly& f, const Poly& g, const SobolevProduct& sp) { return sp.inner(f, g); }

/// ⟨x^i, x^j⟩ table for a product, exact.
class SobolevGram {
 public:
  SobolevGram(const SobolevProduct& sp, int size) : size_(size) {
    if (size < 0) throw argument_error("SobolevGram: negative size");
    const MomentTable mt = moments(sp.base(), 2 * size);
    const auto un = static_cast<size_t>(size) + 1;
    g_.assign(un, std::vector<Rational>(un));
    for (int i = 0; i <= size; ++i)
      for (int j = i; j <= size; ++j) g_[static_cast<size_t>(i)][static_cast<size_t>(j)] = mt[i + j];
    for (const auto& t : sp.masses()) {
      for (int nu = 0; nu <= t.order; ++nu) {
        const Rational w = t.weight(nu);
        if (sgn(w) == 0) continue;
        std::vector<Rational> dv;
        for (int i = 0; i <= size; ++i) dv.push_back(monomial_derivative_at(i, nu, t.c));
        for (int i = nu; i <= size; ++i)
          for (int j = std::max(i, nu); j <= size; ++j)
            g_[static_cast<size_t>(i)][static_cast<size_t>(j)] += w * dv[static_cast<size_t>(i)] * dv[static_cast<size_t>(j)];
      }
    }
    for (int i = 0; i <= size; ++i)
      for (int j = 0; j < i; ++j) g_[static_cast<size_t>(i)][static_cast<size_t>(j)] = g_[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }

  int size() const { return size_; }
  const Rational& operator()(int i, int j) const { return g_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j)); }

 private:
  int size_;
  std::vector<std::vector<Rational>> g_;
};

/// Monic S_n with ⟨x^k, S_n⟩ = 0 for k < n. `row_order` permutes the
/// equations of the Gram system; the result must not depend on it.
inline Poly compute_Sn(const SobolevProduct& sp, int n, const std::vector<size_t>* row_order = nullptr) {
  if (n < 0) throw argument_error("compute_Sn: negative degree");
  SobolevGram g(sp, n);
  return monic_orthogonal(g, n, row_order);
}

/// S_0..S_nmax for a product; extended on demand.
class SobolevSeq {
 public:
  explicit SobolevSeq(SobolevProduct sp, int nmax = 0) : sp_(std::move(sp)) { extend(nmax); }

  const SobolevProduct& product() const { return sp_; }
  int nmax() const { return static_cast<int>(polys_.size()) - 1; }

  const Poly& operator[](int n) {
    extend(n);
    return polys_[static_cast<size_t>(n)];
  }
  const Poly& at(int n) const { return polys_.at(static_cast<size_t>(n)); }
  const std::vector<Poly>& polys() const { return polys_; }

  void extend(int nmax) {
    if (nmax <= this->nmax()) return;
    if (!gram_ || gram_->size() < nmax) gram_.emplace(sp_, std::max(nmax, 2 * std::max(this->nmax(), 8)));
    for (int n = this->nmax() + 1; n <= nmax; ++n) polys_.push_back(monic_orthogonal(*gram_, n));
  }

  Rational norm2(int n) {
    const Poly& s = (*this)[n];
    return gram_inner(*gram_, s, s);
  }

  const SobolevGram& gram() const { return *gram_; }

 private:
  SobolevProduct sp_;
  std::vector<Poly> polys_;
  std::optional<SobolevGram> gram_;
};

/// Checks ∫ S_n x^j dμ_ρ = 0 for j = 0..n-d-1.
inline bool quasi_orthogonality_check(const SobolevProduct& sp, const Poly& Sn, int n) {
  const int d = sp.d();
  if (n <= d) throw precondition_error("quasi_orthogonality_check: needs n > d (n = " + std::to_string(n) +
                                       ", d = " + std::to_string(d) + ")");
  const MeasureSpec mr = sp.modified();
  for (int j = 0; j <= n - d - 1; ++j)
    if (sgn(mr.integrate(Poly::monomial(j, Rational(1)) * Sn)) != 0) return false;
  return true;
}

inline bool quasi_orthogonality_check(const SobolevProduct& sp, int n) {
  if (n <= sp.d()) return quasi_orthogonality_check(sp, Poly{}, n);
  return quasi_orthogonality_check(sp, compute_Sn(sp, n), n);
}

// ---------------------------------------------------------------------------
// Minimal polynomial with prescribed derivative zeros

struct PrescribedResult {
  Poly U;
  int kappa = 0;
  bool ordered = false;
};

/// κ = min{i : ν_i ≥ i} - 1 over the order-sorted sequence (1-based),
/// with i = M + 1 when no such index exists.
inline int prescribed_kappa(const std::vector<OrderedPair>& seq) {
  for (size_t i = 0; i < seq.size(); ++i)
    if (seq[i].nu >= static_cast<int>(i) + 1) return static_cast<int>(i);
  return static_cast<int>(seq.size());
}

/// Lowest-degree monic U with U^(ν_i)(r_i) = 0 for every pair.
inline PrescribedResult minimal_prescribed_polynomial(const std::vector<OrderedPair>& pairs) {
  OrderVerdict v = check_sequential_order(pairs, Hull::none());
  PrescribedResult out;
  out.ordered = v.ordered;
  std::vector<OrderedPair> seq = v.ordered ? v.arrangement : pairs;
  if (!v.ordered) std::stable_sort(seq.begin(), seq.end(), [](const auto& a, const auto& b) { return a.nu < b.nu; });
  out.kappa = prescribed_kappa(seq);

  int bound = 0;
  for (const auto& p : pairs) bound += p.nu + 1;
  for (int D = 0; D <= bound; ++D) {
    RationalMatrix A;
    RationalVector b;
    for (const auto& p : pairs) {
      RationalVector row;
      for (int i = 0; i < D; ++i) row.push_back(monomial_derivative_at(i, p.nu, p.r));
      A.push_back(std::move(row));
      b.push_back(-monomial_derivative_at(D, p.nu, p.r));
    }
    std::vector<Rational> coeffs;
    if (D == 0) {
      if (std::any_of(b.begin(), b.end(), [](const Rational& x) { return sgn(x) != 0; })) continue;
    } else if (!A.empty()) {
      LinearSolution s = solve_linear_exact(A, b);
      if (s.kind == LinearSolution::Kind::none) continue;
      if (s.kind == LinearSolution::Kind::many)
        throw internal_error("minimal_prescribed_polynomial: non-unique solution at minimal degree");
      coeffs = s.x;
    } else {
      coeffs.assign(static_cast<size_t>(D), Rational(0));
    }
    coeffs.emplace_back(1);
    out.U = Poly(std::move(coeffs));
    break;
  }
  if (out.ordered && out.U.degree() != out.kappa)
    throw internal_error("minimal_prescribed_polynomial: degree " + std::to_string(out.U.degree()) +
                         " differs from kappa " + std::to_string(out.kappa) + " for an ordered sequence");
  return out;
}

// ---------------------------------------------------------------------------
// Zero reports

struct ZeroEntry {
  enum class Kind { interior, attracted, other_real };
  Kind kind = Kind::other_real;
  BigFloat value;
  Rational lo, hi;  // certified enclosure
  int multiplicity = 1;
  int mass_index = -1;  // for attracted zeros
};

inline const char* kind_name(ZeroEntry::Kind k) {
  switch (k) {
    case ZeroEntry::Kind::interior: return "interior";
    case ZeroEntry::Kind::attracted: return "attracted";
    case ZeroEntry::Kind::other_real: return "other_real";
  }
  return "?";
}

struct ZeroReport {
  int n = 0;
  std::vector<ZeroEntry> interior;
  std::vector<ZeroEntry> attracted;
  std::vector<ZeroEntry> other_real;
  /// Approximate non-real zeros (Aberth), for display.
  std::vector<Complex> complex_values;
  int complex_count = 0;
  /// Odd-multiplicity roots in (-1, 1), certified.
  int sign_change_count = 0;
  std::vector<Rational> radii;

  int real_count() const {
    int s = 0;
    for (const auto* v : {&interior, &attracted, &other_real})
      for (const auto& e : *v) s += e.multiplicity;
    return s;
  }
  bool all_simple() const {
    for (const auto* v : {&interior, &attracted, &other_real})
      for (const auto& e : *v)
        if (e.multiplicity != 1) return false;
    return true;
  }
  /// One simple zero near each mass, n - N simple interior zeros, nothing else.
  bool asymptotic_shape(int N) const {
    if (complex_count != 0 || !other_real.empty() || !all_simple()) return false;
    if (static_cast<int>(interior.size()) != n - N || static_cast<int>(attracted.size()) != N) return false;
    std::vector<int> hits(static_cast<size_t>(N), 0);
    for (const auto& e : attracted) ++hits[static_cast<size_t>(e.mass_index)];
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  }
};

/// Default neighbourhood radius of each mass: a quarter of its distance to
/// [-1, 1] and to the other masses.
inline std::vector<Rational> default_radii(const SobolevProduct& sp) {
  std::vector<Rational> r;
  for (size_t j = 0; j < sp.masses().size(); ++j) {
    const Rational& c = sp.masses()[j].c;
    Rational dist = abs(c) > 1 ? Rational(abs(c) - 1) : Rational(0);
    for (size_t i = 0; i < sp.masses().size(); ++i)
      if (i != j) dist = std::min(dist, Rational(abs(c - sp.masses()[i].c)));
    r.push_back(dist / 4);
  }
  return r;
}

inline std::vector<Rational> checked_radii(const SobolevProduct& sp, const Rational& radius) {
  if (sgn(radius) <= 0) throw argument_error("zero_report: neighbourhood radius must be positive");
  std::vector<Rational> r;
  for (size_t j = 0; j < sp.masses().size(); ++j) {
    const Rational& c = sp.masses()[j].c;
    if (abs(c) - radius <= 1)
      throw argument_error("zero_report: neighbourhood of " + to_string(c) + " reaches [-1, 1]");
    for (size_t i = 0; i < j; ++i)
      if (abs(c - sp.masses()[i].c) <= 2 * radius)
        throw argument_error("zero_report: neighbourhoods of " + to_string(c) + " and " +
                             to_string(sp.masses()[i].c) + " overlap");
    r.push_back(radius);
  }
  return r;
}

/// Certified classification of the zeros of Sn.
inline ZeroReport zero_report(const SobolevProduct& sp, const Poly& Sn, unsigned prec,
                              const std::optional<Rational>& radius = std::nullopt) {
  if (Sn.is_zero()) throw argument_error("zero_report: zero polynomial");
  if (!sp.masses_outside()) throw argument_error("zero_report: mass points must lie outside [-1, 1]");
  ZeroReport zr;
  zr.n = Sn.degree();
  zr.radii = radius ? checked_radii(sp, *radius) : default_radii(sp);
  if (zr.n == 0) return zr;
  const Poly g = squarefree_part(Sn);
  const SturmSequence sturm(g);
  const Rational width = Rational(1, Integer(1) << 40);
  for (RootInterval iv : isolate_real_roots(Sn)) {
    ZeroEntry e;
    e.multiplicity = iv.multiplicity;
    const bool inside = compare_root(sturm, iv, Rational(-1)) > 0 && compare_root(sturm, iv, Rational(1)) < 0;
    if (inside) {
      e.kind = ZeroEntry::Kind::interior;
    } else {
      for (size_t j = 0; j < sp.masses().size(); ++j) {
        const Rational& c = sp.masses()[j].c;
        const Rational& r = zr.radii[j];
        if (compare_root(sturm, iv, c - r) > 0 && compare_root(sturm, iv, c + r) < 0) {
          e.kind = ZeroEntry::Kind::attracted;
          e.mass_index = static_cast<int>(j);
          break;
        }
      }
    }
    RootInterval narrow = narrow_root_interval(sturm, iv, width);
    e.lo = narrow.lo;
    e.hi = narrow.hi;
    narrow.multiplicity = 1;
    e.value = refine_root(g, narrow, prec);
    (e.kind == ZeroEntry::Kind::interior    ? zr.interior
     : e.kind == ZeroEntry::Kind::attracted ? zr.attracted
                                            : zr.other_real)
        .push_back(std::move(e));
  }
  zr.complex_count = zr.n - zr.real_count();
  zr.sign_change_count = count_sign_changes_in(Sn, -1, 1);
  if (zr.complex_count > 0) {
    auto all = all_roots(Sn, prec);
    std::sort(all.begin(), all.end(), [](const Complex& a, const Complex& b) { return abs(a.imag()) > abs(b.imag()); });
    all.resize(static_cast<size_t>(zr.complex_count));
    std::sort(all.begin(), all.end(), [](const Complex& a, const Complex& b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() > b.imag();
    });
    zr.complex_values = std::move(all);
  }
  return zr;
}

inline ZeroReport zero_report(const SobolevProduct& sp, int n, unsigned prec,
                              const std::optional<Rational>& radius = std::nullopt) {
  return zero_report(sp, compute_Sn(sp, n), prec, radius);
}

/// Smallest n0 <= nmax such that every report for n in [n0, nmax] has the
/// asymptotic shape; nullopt when even nmax fails.
inline std::optional<int> find_n0(SobolevSeq& seq, int nmax, unsigned prec,
                                  const std::optional<Rational>& radius = std::nullopt) {
  const SobolevProduct& sp = seq.product();
  std::optional<int> n0;
  for (int n = nmax; n >= std::max(1, sp.N()); --n) {
    if (!zero_report(sp, seq[n], prec, radius).asymptotic_shape(sp.N())) break;
    n0 = n;
  }
  return n0;
}

/// S_n = S_{n,1} S_{n,2}; S_{n,1} collects the interior zeros and
/// S⁺_{n,2} = (-1)^ν S_{n,2} is positive on [-1, 1], ν = #{c_j > 1}.
struct SplitSn {
  BigPoly S1;
  BigPoly S2plus;
  std::vector<BigFloat> interior;
  std::vector<BigFloat> exterior;
};

inline SplitSn split_Sn(const SobolevProduct& sp, const ZeroReport& zr, unsigned prec) {
  const int N = sp.N();
  if (static_cast<int>(zr.interior.size()) != zr.n - N || zr.complex_count != 0 ||
      static_cast<int>(zr.attracted.size() + zr.other_real.size()) != N || !zr.all_simple())
    throw decomposition_error("split_Sn: degree " + std::to_string(zr.n) + " has " +
                              std::to_string(zr.interior.size()) + " simple interior zeros and " +
                              std::to_string(zr.complex_count) + " non-real zeros; expected " +
                              std::to_string(zr.n - N) + " and 0 (n below the asymptotic regime)");
  const BigFloat one(1L, prec);
  SplitSn s{BigPoly::constant(one), BigPoly::constant(one), {}, {}};
  for (const auto& e : zr.interior) {
    s.S1 = s.S1 * BigPoly{-e.value.rounded(prec), one};
    s.interior.push_back(e.value.rounded(prec));
  }
  for (const auto* v : {&zr.attracted, &zr.other_real})
    for (const auto& e : *v) {
      s.S2plus = s.S2plus * BigPoly{-e.value.rounded(prec), one};
      s.exterior.push_back(e.value.rounded(prec));
    }
  int nu = 0;
  for (const auto& t : sp.masses())
    if (t.c > 1) ++nu;
  if (nu % 2) s.S2plus = -s.S2plus;
  const int m = 64;
  for (int i = 0; i < m; ++i) {
    const BigFloat x = cos(BigFloat::pi(prec) * static_cast<long>(2 * i + 1) / static_cast<long>(2 * m));
    if (s.S2plus(x).sign() <= 0) throw decomposition_error("split_Sn: S2plus is not positive on [-1, 1]");
  }
  if (s.S2plus(BigFloat(1L, prec)).sign() <= 0 || s.S2plus(BigFloat(-1L, prec)).sign() <= 0)
    throw decomposition_error("split_Sn: S2plus is not positive at the endpoints");
  return s;
}

}  // namespace dsop
