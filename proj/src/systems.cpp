#include "specconv/systems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "specconv/errors.hpp"
#include "specconv/linalg/decompositions.hpp"
#include "specconv/linalg/random.hpp"

namespace specconv {

SpectralSystem::SpectralSystem(SystemKind k, std::size_t r, std::size_t c) : kind_(k), rows_(r), cols_(c) {
  if (r == 0 || c == 0) throw InputError("system dimensions must be positive");
}

namespace {

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
    throw InputError("bad system dimension '" + std::string(s) + "'");
  return v;
}

}  // namespace

SpectralSystem SpectralSystem::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("system must look like kind:dims, got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon), dims = text.substr(colon + 1);
  if (kind == "reorder") return reorder(parse_size(dims));
  if (kind == "abs") return abs(parse_size(dims));
  if (kind == "absreorder") return abs_reorder(parse_size(dims));
  if (kind == "symeig") return sym_eig(parse_size(dims));
  if (kind == "singval") {
    const auto x = dims.find('x');
    if (x == std::string_view::npos) throw InputError("singval dimensions must look like MxN");
    return sing_val(parse_size(dims.substr(0, x)), parse_size(dims.substr(x + 1)));
  }
  throw InputError("unknown system kind '" + std::string(kind) + "'");
}

std::string SpectralSystem::name() const {
  switch (kind_) {
    case SystemKind::Reorder: return "reorder:" + std::to_string(rows_);
    case SystemKind::Abs: return "abs:" + std::to_string(rows_);
    case SystemKind::AbsReorder: return "absreorder:" + std::to_string(rows_);
    case SystemKind::SymEig: return "symeig:" + std::to_string(rows_);
    case SystemKind::SingVal: return "singval:" + std::to_string(rows_) + "x" + std::to_string(cols_);
  }
  return {};
}

std::size_t SpectralSystem::dim_v() const {
  switch (kind_) {
    case SystemKind::SymEig: return rows_ * (rows_ + 1) / 2;
    case SystemKind::SingVal: return rows_ * cols_;
    default: return rows_;
  }
}

std::size_t SpectralSystem::dim_w() const {
  return kind_ == SystemKind::SingVal ? std::min(rows_, cols_) : rows_;
}

SpectralSystem SpectralSystem::reduced() const {
  switch (kind_) {
    case SystemKind::SymEig: return reorder(rows_);
    case SystemKind::SingVal: return abs_reorder(dim_w());
    default: return *this;
  }
}

double inner(const PointV& a, const PointV& b) {
  if (a.value.rows() != b.value.rows() || a.value.cols() != b.value.cols()) throw InputError("inner: shape mismatch");
  return dot(a.value.data(), b.value.data());
}

double norm(const PointV& a) { return a.value.frobenius_norm(); }
PointV operator+(const PointV& a, const PointV& b) { return {a.value + b.value}; }
PointV operator-(const PointV& a, const PointV& b) { return {a.value - b.value}; }
PointV operator*(double s, const PointV& a) { return {s * a.value}; }

double ConeDesc::violation(std::span<const double> y) const {
  double v = 0.0;
  for (const Vec& a : inequalities) v = std::max(v, dot(a, y));
  for (const Vec& e : equalities) v = std::max(v, std::abs(dot(e, y)));
  return v;
}

void check_point(const SpectralSystem& sys, const PointV& x) {
  if (x.value.rows() != sys.rows() || x.value.cols() != sys.cols())
    throw InputError("point shape " + std::to_string(x.value.rows()) + "x" + std::to_string(x.value.cols()) +
                     " does not match system " + sys.name());
  if (sys.kind() == SystemKind::SymEig && !x.value.is_symmetric(1e-12))
    throw InputError("point of " + sys.name() + " must be symmetric");
}

void check_point(const SpectralSystem& sys, std::span<const double> u) {
  if (u.size() != sys.dim_w())
    throw InputError("W-point has length " + std::to_string(u.size()) + ", system " + sys.name() + " needs " +
                     std::to_string(sys.dim_w()));
}

namespace {

Vec sorted_desc(Vec v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

Vec abs_of(std::span<const double> v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]);
  return out;
}

}  // namespace

PointW spectral_map(const SpectralSystem& sys, const PointV& x) {
  check_point(sys, x);
  switch (sys.kind()) {
    case SystemKind::Reorder: return sorted_desc(x.flat());
    case SystemKind::Abs: return abs_of(x.value.data());
    case SystemKind::AbsReorder: return sorted_desc(abs_of(x.value.data()));
    case SystemKind::SymEig: return sym_eig(x.value).eigenvalues;
    case SystemKind::SingVal: return svd(x.value).singular_values;
  }
  return {};
}

ConeDesc range_cone(const SpectralSystem& sys) {
  const std::size_t d = sys.dim_w();
  ConeDesc k;
  auto unit = [d](std::size_t i, double s) {
    Vec r(d, 0.0);
    r[i] = s;
    return r;
  };
  switch (sys.kind()) {
    case SystemKind::Abs:
      for (std::size_t i = 0; i < d; ++i) k.inequalities.push_back(unit(i, -1.0));
      break;
    case SystemKind::Reorder:
    case SystemKind::SymEig:
    case SystemKind::AbsReorder:
    case SystemKind::SingVal:
      for (std::size_t i = 0; i + 1 < d; ++i) {
        Vec r(d, 0.0);
        r[i] = -1.0;
        r[i + 1] = 1.0;
        k.inequalities.push_back(std::move(r));
      }
      if (sys.sorted_nonnegative_range()) k.inequalities.push_back(unit(d - 1, -1.0));
      break;
  }
  return k;
}

ConeDesc polar_cone(const SpectralSystem& sys) {
  const std::size_t d = sys.dim_w();
  ConeDesc p;
  auto prefix = [d](std::size_t l) {
    Vec r(d, 0.0);
    for (std::size_t i = 0; i < l; ++i) r[i] = 1.0;
    return r;
  };
  switch (sys.kind()) {
    case SystemKind::Abs:
      for (std::size_t i = 0; i < d; ++i) {
        Vec r(d, 0.0);
        r[i] = 1.0;
        p.inequalities.push_back(std::move(r));
      }
      break;
    case SystemKind::Reorder:
    case SystemKind::SymEig:
      for (std::size_t l = 1; l < d; ++l) p.inequalities.push_back(prefix(l));
      p.equalities.push_back(prefix(d));
      break;
    case SystemKind::AbsReorder:
    case SystemKind::SingVal:
      for (std::size_t l = 1; l <= d; ++l) p.inequalities.push_back(prefix(l));
      break;
  }
  return p;
}

bool in_range_cone(const SpectralSystem& sys, std::span<const double> u, double tol) {
  check_point(sys, u);
  return range_cone(sys).contains(u, tol);
}

bool in_polar_cone(const SpectralSystem& sys, std::span<const double> y, double tol) {
  check_point(sys, y);
  return polar_cone(sys).contains(y, tol);
}

namespace {

// Indices of v sorted by descending key, ties in index order.
std::vector<std::size_t> rank_order(std::span<const double> key) {
  std::vector<std::size_t> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return key[i] > key[j]; });
  return idx;
}

}  // namespace

PointV align(const SpectralSystem& sys, const PointV& c, std::span<const double> u) {
  check_point(sys, c);
  check_point(sys, u);
  if (!in_range_cone(sys, u, kTol)) throw InputError("align: target is not in the range cone");
  switch (sys.kind()) {
    case SystemKind::Reorder: {
      const Vec cv = c.flat();
      const auto idx = rank_order(cv);
      Vec x(u.size());
      for (std::size_t i = 0; i < idx.size(); ++i) x[idx[i]] = u[i];
      return PointV::vector(x);
    }
    case SystemKind::Abs: {
      const Vec cv = c.flat();
      Vec x(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) x[i] = cv[i] < 0 ? -u[i] : u[i];
      return PointV::vector(x);
    }
    case SystemKind::AbsReorder: {
      const Vec cv = c.flat();
      const auto idx = rank_order(abs_of(cv));
      Vec x(u.size());
      for (std::size_t i = 0; i < idx.size(); ++i) x[idx[i]] = cv[idx[i]] < 0 ? -u[i] : u[i];
      return PointV::vector(x);
    }
    case SystemKind::SymEig: {
      const SymEigResult e = sym_eig(c.value);
      const Matrix& q = e.eigenvectors;
      Matrix x = q * Matrix::diagonal(u) * q.transpose();
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = i + 1; j < x.cols(); ++j) x(i, j) = x(j, i) = 0.5 * (x(i, j) + x(j, i));
      return {x};
    }
    case SystemKind::SingVal: {
      const SvdResult s = svd(c.value);
      return {s.u * Matrix::rectangular_diagonal(sys.rows(), sys.cols(), u) * s.v.transpose()};
    }
  }
  return {};
}

PointW reduced_map(const SpectralSystem& sys, std::span<const double> u) {
  check_point(sys, u);
  switch (sys.kind()) {
    case SystemKind::Reorder:
    case SystemKind::SymEig: return sorted_desc(Vec(u.begin(), u.end()));
    case SystemKind::Abs: return abs_of(u);
    case SystemKind::AbsReorder:
    case SystemKind::SingVal: return sorted_desc(abs_of(u));
  }
  return {};
}

namespace {

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

double distinct_permutations(std::span<const double> v) {
  std::map<double, std::size_t> mult;
  for (double x : v) ++mult[x == 0.0 ? 0.0 : x];
  double c = factorial(v.size());
  for (const auto& [val, m] : mult) c /= factorial(m);
  return c;
}

std::size_t nonzeros(std::span<const double> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

template <class Fn>
void for_each_permutation(Vec v, Fn&& fn) {
  for (double& x : v)
    if (x == 0.0) x = 0.0;  // fold -0 into +0
  std::sort(v.begin(), v.end());
  do {
    fn(v);
  } while (std::next_permutation(v.begin(), v.end()));
}

void push_sign_patterns(const Vec& v, std::vector<Vec>& out) {
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) nz.push_back(i);
  const std::size_t patterns = std::size_t{1} << nz.size();
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    Vec w = v;
    for (std::size_t b = 0; b < nz.size(); ++b)
      if (mask & (std::size_t{1} << b)) w[nz[b]] = -w[nz[b]];
    out.push_back(std::move(w));
  }
}

}  // namespace

double orbit_size(SystemKind kind, std::span<const double> u) {
  switch (kind) {
    case SystemKind::Reorder:
    case SystemKind::SymEig: return distinct_permutations(u);
    case SystemKind::Abs: return std::pow(2.0, static_cast<double>(nonzeros(u)));
    case SystemKind::AbsReorder:
    case SystemKind::SingVal: return distinct_permutations(abs_of(u)) * std::pow(2.0, static_cast<double>(nonzeros(u)));
  }
  return 0.0;
}

std::vector<Vec> vector_orbit(SystemKind kind, std::span<const double> u, double limit) {
  const double size = orbit_size(kind, u);
  if (size > limit)
    throw ResourceError("orbit of size " + std::to_string(size) + " exceeds limit " + std::to_string(limit));
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(size));
  switch (kind) {
    case SystemKind::Reorder:
    case SystemKind::SymEig:
      for_each_permutation(Vec(u.begin(), u.end()), [&](const Vec& p) { out.push_back(p); });
      break;
    case SystemKind::Abs: {
      Vec a = abs_of(u);
      push_sign_patterns(a, out);
      break;
    }
    case SystemKind::AbsReorder:
    case SystemKind::SingVal:
      for_each_permutation(abs_of(u), [&](const Vec& p) { push_sign_patterns(p, out); });
      break;
  }
  return out;
}

std::vector<PointV> orbit_enumerate(const SpectralSystem& sys, std::span<const double> u) {
  if (!sys.is_vector())
    throw UnsupportedError("orbit_enumerate: the orbit in " + sys.name() + " is a continuum; use orbit_sample");
  check_point(sys, u);
  if (!in_range_cone(sys, u, kTol)) throw InputError("orbit_enumerate: point is not in the range cone");
  std::vector<PointV> out;
  for (Vec& v : vector_orbit(sys.kind(), u)) out.push_back(PointV::vector(std::move(v)));
  return out;
}

std::vector<PointV> orbit_sample(const SpectralSystem& sys, std::span<const double> u, std::size_t count,
                                 std::uint64_t seed) {
  check_point(sys, u);
  if (!in_range_cone(sys, u, kTol)) throw InputError("orbit_sample: point is not in the range cone");
  Rng rng(seed);
  std::vector<PointV> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    switch (sys.kind()) {
      case SystemKind::Reorder:
      case SystemKind::Abs:
      case SystemKind::AbsReorder: {
        Vec x(u.begin(), u.end());
        if (sys.kind() != SystemKind::Abs) std::shuffle(x.begin(), x.end(), rng.engine());
        if (sys.kind() != SystemKind::Reorder)
          for (double& v : x)
            if (rng.coin()) v = -v;
        out.push_back(PointV::vector(std::move(x)));
        break;
      }
      case SystemKind::SymEig: {
        const Matrix q = rng.orthogonal(sys.rows());
        Matrix x = q * Matrix::diagonal(u) * q.transpose();
        for (std::size_t i = 0; i < x.rows(); ++i)
          for (std::size_t j = i + 1; j < x.cols(); ++j) x(i, j) = x(j, i) = 0.5 * (x(i, j) + x(j, i));
        out.push_back({std::move(x)});
        break;
      }
      case SystemKind::SingVal: {
        const Matrix uu = rng.orthogonal(sys.rows());
        const Matrix vv = rng.orthogonal(sys.cols());
        out.push_back({uu * Matrix::rectangular_diagonal(sys.rows(), sys.cols(), u) * vv.transpose()});
        break;
      }
    }
  }
  return out;
}

PointV random_point(const SpectralSystem& sys, Rng& rng) {
  switch (sys.kind()) {
    case SystemKind::SymEig: return {rng.symmetric_matrix(sys.rows())};
    case SystemKind::SingVal: return {rng.normal_matrix(sys.rows(), sys.cols())};
    default: return PointV::vector(rng.normal_vector(sys.rows()));
  }
}

}  // namespace specconv
