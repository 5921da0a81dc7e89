#include "qlab/orders.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "catalog_data.hpp"
#include "qlab/error.hpp"

namespace qlab {

namespace {

using RMat = std::array<std::array<Rational, 4>, 4>;

// Gauss-Jordan over Q. Returns nullopt if singular.
std::optional<RMat> invert(RMat m) {
  RMat inv{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv[i][j] = (i == j) ? 1 : 0;
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(m[col], m[piv]);
    std::swap(inv[col], inv[piv]);
    Rational p = m[col][col];
    for (int j = 0; j < 4; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int j = 0; j < 4; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Rational determinant(RMat m) {
  Rational det = 1;
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(m[col], m[piv]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < 4; ++r) {
      Rational f = m[r][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace

OrderBasis::OrderBasis(AlgebraParams params, std::array<QuatElement, 4> elements)
    : params_(std::move(params)), e_(std::move(elements)) {
  RMat rows{};
  for (int i = 0; i < 4; ++i) {
    if (!(e_[i].algebra() == params_.algebra))
      throw DomainError("OrderBasis: element algebra does not match parameters");
    rows[i] = e_[i].coords();
  }
  auto inv = invert(rows);
  if (!inv) throw DomainError("OrderBasis: basis elements are linearly dependent");
  inverse_ = *inv;

  integral_ = true;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      trace_gram_[i][j] = (e_[i] * e_[j].conjugate()).reduced_trace();
      if (!is_integer(trace_gram_[i][j])) integral_ = false;
    }
    Rational t = e_[i].reduced_trace();
    if (!is_integer(t)) integral_ = false;
  }
  if (integral_) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) trace_gram_int_[i][j] = trace_gram_[i][j].get_num().get_si();
      traces_int_[i] = e_[i].reduced_trace().get_num().get_si();
    }
  }
  first_is_one_ = e_[0] == QuatElement::scalar(params_.algebra, 1);
}

QuatElement OrderBasis::from_coords(const Coords& c) const {
  std::array<Rational, 4> x{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) x[k] += Rational(c[i]) * e_[i][k];
  return {params_.algebra, x};
}

std::array<Rational, 4> OrderBasis::coords_of(const QuatElement& q) const {
  if (!(q.algebra() == params_.algebra))
    throw ParameterError("coords_of: element from a different algebra");
  std::array<Rational, 4> c{0, 0, 0, 0};
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) c[j] += q[k] * inverse_[k][j];
  for (auto& v : c) v.canonicalize();
  return c;
}

bool OrderBasis::contains(const QuatElement& q) const {
  for (const auto& c : coords_of(q))
    if (!is_integer(c)) return false;
  return true;
}

std::optional<Coords> OrderBasis::integer_coords_of(const QuatElement& q) const {
  auto c = coords_of(q);
  Coords out{};
  for (int i = 0; i < 4; ++i) {
    if (!is_integer(c[i]) || !c[i].get_num().fits_slong_p()) return std::nullopt;
    out[i] = c[i].get_num().get_si();
  }
  return out;
}

long long OrderBasis::norm_of(const Coords& c) const {
  __int128 s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      s += static_cast<__int128>(trace_gram_int_[i][j]) * c[i] * c[j];
  return static_cast<long long>(s / 2);
}

long long OrderBasis::trace_of(const Coords& c) const {
  long long t = 0;
  for (int i = 0; i < 4; ++i) t += static_cast<long long>(traces_int_[i]) * c[i];
  return t;
}

VerificationReport verify_order(const OrderBasis& basis, long D) {
  VerificationReport rep;
  const Algebra alg = basis.algebra();
  rep.contains_one = basis.contains(QuatElement::scalar(alg, 1));

  rep.multiplicatively_closed = true;
  for (const auto& x : basis.elements())
    for (const auto& y : basis.elements())
      if (!basis.contains(x * y)) rep.multiplicatively_closed = false;

  rep.integral_traces_norms = true;
  for (const auto& x : basis.elements())
    if (!is_integer(x.reduced_trace()) || !is_integer(x.reduced_norm()))
      rep.integral_traces_norms = false;
  for (const auto& row : basis.trace_gram())
    for (const auto& g : row)
      if (!is_integer(g)) rep.integral_traces_norms = false;

  rep.trace_gram_det = determinant(basis.trace_gram());
  Rational absdet = abs(rep.trace_gram_det);
  if (is_integer(absdet) && mpz_perfect_square_p(absdet.get_num().get_mpz_t())) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), absdet.get_num().get_mpz_t());
    if (root.fits_slong_p()) rep.reduced_discriminant = root.get_si();
  }
  rep.discriminant_equals_D = rep.reduced_discriminant && *rep.reduced_discriminant == D;
  return rep;
}

std::vector<CatalogRecord> parse_catalog(std::string_view text) {
  std::vector<CatalogRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();

    auto fail = [&](const std::string& why) {
      throw ConfigError("order catalog line " + std::to_string(lineno) + ": " + why);
    };
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ';')) fields.push_back(f);
    if (fields.size() != 4) fail("expected 4 ';'-separated fields");

    CatalogRecord rec;
    try {
      rec.D = std::stol(fields[0]);
      rec.a = std::stol(fields[1]);
      rec.b = std::stol(fields[2]);
    } catch (const std::exception&) {
      fail("bad integer field");
    }
    std::vector<std::string> nums;
    std::stringstream cs(fields[3]);
    while (std::getline(cs, f, ',')) nums.push_back(f);
    if (nums.size() != 16) fail("expected 16 rationals, got " + std::to_string(nums.size()));
    for (int k = 0; k < 16; ++k) {
      const auto& tok = nums[k];
      auto slash = tok.find('/');
      if (slash == std::string::npos) fail("rational '" + tok + "' is not of the form num/den");
      Rational q;
      try {
        mpz_class num(tok.substr(0, slash)), den(tok.substr(slash + 1));
        if (den == 0) fail("zero denominator");
        q = Rational(num, den);
      } catch (const std::invalid_argument&) {
        fail("rational '" + tok + "' does not parse");
      }
      q.canonicalize();
      rec.basis[k / 4][k % 4] = q;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string format_catalog_record(const CatalogRecord& rec) {
  std::ostringstream os;
  os << rec.D << ';' << rec.a << ';' << rec.b << ';';
  for (int k = 0; k < 16; ++k) {
    const Rational& q = rec.basis[k / 4][k % 4];
    if (k) os << ',';
    os << q.get_num() << '/' << q.get_den();
  }
  return os.str();
}

std::vector<CatalogRecord> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open order catalog '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

const std::vector<CatalogRecord>& builtin_catalog() {
  static const std::vector<CatalogRecord> cat = parse_catalog(detail::kBuiltinCatalog);
  return cat;
}

std::vector<long> catalog_discriminants() {
  std::vector<long> out;
  for (const auto& r : builtin_catalog()) out.push_back(r.D);
  return out;
}

OrderBasis order_from_record(const CatalogRecord& rec) {
  AlgebraParams params = discriminant(rec.a, rec.b);
  Algebra alg = params.algebra;
  std::array<QuatElement, 4> e{QuatElement(alg, rec.basis[0]), QuatElement(alg, rec.basis[1]),
                               QuatElement(alg, rec.basis[2]), QuatElement(alg, rec.basis[3])};
  OrderBasis basis(std::move(params), std::move(e));
  VerificationReport rep = verify_order(basis, rec.D);
  if (!rep.ok() || basis.D() != rec.D)
    throw ConsistencyError("catalog entry for D=" + std::to_string(rec.D) +
                           " failed certification");
  return basis;
}

OrderBasis catalog_order(long D, int level) {
  if (level != 1) throw DomainError("only level N = 1 (maximal orders) is supported");
  for (const auto& rec : builtin_catalog())
    if (rec.D == D) return order_from_record(rec);
  std::string known;
  for (long d : catalog_discriminants()) known += (known.empty() ? "" : ", ") + std::to_string(d);
  throw DomainError("unsupported discriminant D=" + std::to_string(D) + "; catalog has " + known);
}

double shimura_volume(long D) {
  double v = std::numbers::pi / 3.0;
  for (long p : prime_factors(D)) v *= static_cast<double>(p - 1);
  return v;
}

}  // namespace qlab
