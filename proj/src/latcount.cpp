#include "qlab/latcount.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "qlab/error.hpp"

namespace qlab {

namespace {

// Cohen's quadratic-form decomposition (Algorithm 2.7.6). Returns false if
// some pivot is not strictly positive.
bool decompose(const Gram4& g, Gram4& q) {
  q = g;
  for (int i = 0; i < 4; ++i) {
    if (!(q[i][i] > 0.0)) return false;
    for (int j = i + 1; j < 4; ++j) {
      q[j][i] = q[i][j];
      q[i][j] = q[i][j] / q[i][i];
    }
    for (int k = i + 1; k < 4; ++k)
      for (int l = k; l < 4; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  for (int i = 0; i < 4; ++i) {
    if (!(q[i][i] > 0.0)) return false;
    for (int j = 0; j < i; ++j) q[i][j] = 0.0;
  }
  return true;
}

long long isqrt_exact(long long v) {
  if (v < 0) return -1;
  long long s = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (s > 0 && s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s * s == v ? s : -1;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace

PointPairForm::PointPairForm(const OrderBasis& basis, const UHPoint& z, const UHPoint& w,
                             const Gram4& gram)
    : basis_(&basis), z_(z), w_(w), gram_(gram) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (gram_[i][j] != gram_[j][i] || !std::isfinite(gram_[i][j]))
        throw DomainError("point-pair Gram matrix must be finite and symmetric");
  if (!decompose(gram_, q_)) throw DomainError("point-pair Gram matrix is not positive definite");
}

double PointPairForm::evaluate(const Coords& c) const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += gram_[i][j] * static_cast<double>(c[j]);
    s += static_cast<double>(c[i]) * row;
  }
  return s;
}

BigFloat PointPairForm::evaluate_extended(const Coords& c, int bits) const {
  const BigMatrix2 m = sigma_inverse(z_, bits) * embed(basis_->from_coords(c), bits) * sigma(w_, bits);
  return m.frobenius_sq();
}

PointPairForm point_pair_gram(const OrderBasis& basis, const UHPoint& z, const UHPoint& w) {
  std::array<RealMatrix2, 4> m;
  const RealMatrix2 left = sigma_inverse(z), right = sigma(w);
  for (int i = 0; i < 4; ++i) m[i] = left * embed(basis.element(i)) * right;
  Gram4 g{};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      g[i][j] = m[i].a * m[j].a + m[i].b * m[j].b + m[i].c * m[j].c + m[i].d * m[j].d;
      g[j][i] = g[i][j];
    }
  try {
    return PointPairForm(basis, z, w, g);
  } catch (const DomainError&) {
    throw PrecisionError("point-pair Gram matrix lost positive definiteness in double precision");
  }
}

namespace {

struct Enumerator {
  const PointPairForm& form;
  const OrderBasis& basis;
  double bound;
  LeafFilter filter;
  std::atomic<long long>& nodes;
  long long budget;
  std::atomic<bool>& abort;

  bool fast_leaf() const {
    return filter.kind != LeafFilter::Kind::any && basis.integral() && basis.first_is_one();
  }

  void consider(const Coords& c, std::vector<LatticeHit>& out) const {
    double q = form.evaluate(c);
    if (q <= bound) out.push_back({c, q});
  }

  bool passes(const Coords& c) const {
    switch (filter.kind) {
      case LeafFilter::Kind::any:
        return true;
      case LeafFilter::Kind::norm:
        return basis.norm_of(c) == filter.norm;
      case LeafFilter::Kind::trace_norm:
        return basis.trace_of(c) == filter.trace && basis.norm_of(c) == filter.norm;
    }
    return false;
  }

  // Innermost coordinate c0 for fixed (c1, c2, c3).
  void leaf(Coords c, double rem, double center, std::vector<LatticeHit>& out) const {
    const auto& q = form.fp_coefficients();
    if (fast_leaf()) {
      // x = c0 * 1 + y with nrd(x) = c0^2 + c0 trd(y) + nrd(y).
      c[0] = 0;
      const long long tr_y = basis.trace_of(c);
      const long long nrd_y = basis.norm_of(c);
      if (filter.kind == LeafFilter::Kind::trace_norm) {
        long long twice = filter.trace - tr_y;
        if (twice % 2 != 0) return;
        long long c0 = twice / 2;
        if (c0 * c0 + c0 * tr_y + nrd_y != filter.norm) return;
        c[0] = c0;
        consider(c, out);
        return;
      }
      const long long disc = tr_y * tr_y - 4 * (nrd_y - filter.norm);
      const long long s = isqrt_exact(disc);
      if (s < 0 || (s - tr_y) % 2 != 0) return;
      c[0] = (-tr_y + s) / 2;
      consider(c, out);
      if (s != 0) {
        c[0] = (-tr_y - s) / 2;
        consider(c, out);
      }
      return;
    }
    const double r = std::sqrt(std::max(rem, 0.0) / q[0][0]);
    const long long lo = static_cast<long long>(std::ceil(center - r));
    const long long hi = static_cast<long long>(std::floor(center + r));
    for (long long c0 = lo; c0 <= hi; ++c0) {
      c[0] = c0;
      if (passes(c)) consider(c, out);
    }
  }

  void run(long long c3_lo, long long c3_hi, std::vector<LatticeHit>& out) const {
    const auto& q = form.fp_coefficients();
    Coords c{};
    long long local = 0;
    for (long long c3 = c3_lo; c3 <= c3_hi; ++c3) {
      if (abort.load(std::memory_order_relaxed)) return;
      c[3] = c3;
      const double rem3 = bound - q[3][3] * double(c3) * double(c3);
      if (rem3 < 0) continue;
      const double ctr2 = -q[2][3] * double(c3);
      const double r2 = std::sqrt(rem3 / q[2][2]);
      for (long long c2 = std::llround(std::ceil(ctr2 - r2)); c2 <= std::llround(std::floor(ctr2 + r2)); ++c2) {
        c[2] = c2;
        const double y2 = double(c2) - ctr2;
        const double rem2 = rem3 - q[2][2] * y2 * y2;
        if (rem2 < 0) continue;
        const double ctr1 = -(q[1][2] * double(c2) + q[1][3] * double(c3));
        const double r1 = std::sqrt(rem2 / q[1][1]);
        for (long long c1 = std::llround(std::ceil(ctr1 - r1)); c1 <= std::llround(std::floor(ctr1 + r1)); ++c1) {
          c[1] = c1;
          const double y1 = double(c1) - ctr1;
          const double rem1 = rem2 - q[1][1] * y1 * y1;
          if (rem1 < 0) continue;
          const double ctr0 = -(q[0][1] * double(c1) + q[0][2] * double(c2) + q[0][3] * double(c3));
          leaf(c, rem1, ctr0, out);
          if (++local == 4096) {
            if (nodes.fetch_add(local, std::memory_order_relaxed) + local > budget) {
              abort.store(true);
              return;
            }
            local = 0;
          }
        }
      }
    }
    nodes.fetch_add(local, std::memory_order_relaxed);
  }
};

}  // namespace

std::vector<LatticeHit> enumerate_raw(const PointPairForm& form, double bound, LeafFilter filter,
                                      const EnumerationOptions& opts) {
  if (!(bound > 0.0)) return {};
  const auto& q = form.fp_coefficients();
  const double r3 = std::sqrt(bound / q[3][3]);
  const long long lo = static_cast<long long>(std::ceil(-r3));
  const long long hi = static_cast<long long>(std::floor(r3));

  std::atomic<long long> nodes{0};
  std::atomic<bool> abort{false};
  Enumerator en{form, form.basis(), bound, filter, nodes, opts.node_budget, abort};

  const unsigned workers = std::min<unsigned>(resolve_workers(opts.workers),
                                              static_cast<unsigned>(std::max(1LL, hi - lo + 1)));
  std::vector<std::vector<LatticeHit>> parts(workers);
  if (workers == 1) {
    en.run(lo, hi, parts[0]);
  } else {
    // Interleaved slabs balance the ellipsoid's fat middle across workers.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (long long c3 = lo + w; c3 <= hi; c3 += workers) en.run(c3, c3, parts[w]);
        } catch (...) {
          errors[w] = std::current_exception();
          abort.store(true);
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  if (abort.load())
    throw ResourceError("lattice enumeration exceeded node budget of " +
                            std::to_string(opts.node_budget) + " after " +
                            std::to_string(nodes.load()) + " nodes",
                        nodes.load());

  std::vector<LatticeHit> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end(),
            [](const LatticeHit& a, const LatticeHit& b) { return a.coords < b.coords; });
  return out;
}

namespace {

// Decides Q(c) <= bound for a value known to lie in the tie band.
bool inside_extended(const PointPairForm& form, const Coords& c, double bound) {
  const int bits = extended_precision_bits();
  BigFloat q = form.evaluate_extended(c, bits);
  BigFloat limit(bound, bits);
  BigFloat slack = BigFloat(tie_margin(bits), bits) * limit;
  return q <= limit + slack;
}

bool in_band(double q, double bound) { return std::abs(q - bound) <= kTieBand * std::max(bound, 1.0); }

}  // namespace

std::vector<Coords> enumerate_ellipsoid(const PointPairForm& form, double bound, LeafFilter filter,
                                        const EnumerationOptions& opts) {
  if (!(bound > 0.0)) return {};
  const double inflated = bound + 2.0 * kTieBand * std::max(bound, 1.0);
  std::vector<Coords> out;
  for (const auto& hit : enumerate_raw(form, inflated, filter, opts)) {
    if (in_band(hit.q, bound)) {
      if (inside_extended(form, hit.coords, bound)) out.push_back(hit.coords);
    } else if (hit.q <= bound) {
      out.push_back(hit.coords);
    }
  }
  return out;
}

std::vector<CountResult> count_profile(const OrderBasis& basis, const UHPoint& z,
                                       const UHPoint& w, const std::vector<double>& Xs,
                                       const EnumerationOptions& opts) {
  if (Xs.empty()) return {};
  for (double X : Xs)
    if (!(X >= 2.0)) throw DomainError("N(X; z, w) requires X >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  const double xmax = *std::max_element(Xs.begin(), Xs.end());
  const PointPairForm form = point_pair_gram(basis, z, w);
  auto hits = enumerate_raw(form, xmax + 2.0 * kTieBand * xmax, LeafFilter::with_norm(1), opts);
  std::sort(hits.begin(), hits.end(),
            [](const LatticeHit& a, const LatticeHit& b) { return a.q < b.q; });
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<CountResult> out;
  out.reserve(Xs.size());
  for (double X : Xs) {
    const double lo = X - kTieBand * X;
    const double hi = X + kTieBand * X;
    auto below = std::lower_bound(hits.begin(), hits.end(), lo,
                                  [](const LatticeHit& h, double v) { return h.q < v; });
    auto above = std::upper_bound(hits.begin(), hits.end(), hi,
                                  [](double v, const LatticeHit& h) { return v < h.q; });
    long long raw = below - hits.begin();
    long long band = 0;
    for (auto it = below; it != above; ++it) {
      ++band;
      if (inside_extended(form, it->coords, X)) ++raw;
    }
    if (raw % 2 != 0)
      throw ConsistencyError("norm-1 elements did not pair up under x -> -x");
    out.push_back({X, raw / 2, band / 2, elapsed});
  }
  return out;
}

CountResult count_lattice(const OrderBasis& basis, const UHPoint& z, const UHPoint& w, double X,
                          const EnumerationOptions& opts) {
  return count_profile(basis, z, w, {X}, opts).front();
}

long long stabilizer_order(const OrderBasis& basis, const UHPoint& z) {
  return count_lattice(basis, z, z, 2.0).count;
}

}  // namespace qlab
