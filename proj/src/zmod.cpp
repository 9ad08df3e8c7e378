#include "logcap/zmod.hpp"

#include <sstream>

namespace logcap {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Modulus::Modulus(unsigned prime, unsigned precision) : prime_(prime), precision_(precision), value_(1) {
  if (!is_prime(prime)) throw std::invalid_argument("modulus: " + std::to_string(prime) + " is not prime");
  if (precision == 0) throw std::invalid_argument("modulus: precision must be >= 1");
  for (unsigned i = 0; i < precision; ++i) {
    value_ *= prime;
    if (value_ >= (std::int64_t{1} << 31))
      throw std::invalid_argument("modulus: l^n must stay below 2^31");
  }
}

unsigned Modulus::valuation(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) return precision_;
  unsigned v = 0;
  while (a % prime_ == 0) {
    a /= prime_;
    ++v;
  }
  return v;
}

std::int64_t Modulus::power_of_prime(unsigned k) const {
  if (k >= precision_) return 0;
  std::int64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= prime_;
  return r;
}

std::int64_t Modulus::inverse(std::int64_t unit) const {
  std::int64_t a = reduce(unit);
  if (a % prime_ == 0) throw std::domain_error("modulus: inverse of a non-unit");
  // extended Euclid on (a, N)
  std::int64_t r0 = value_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return reduce(s0);
}

std::string Modulus::describe() const {
  std::ostringstream os;
  os << "Z/" << prime_ << "^" << precision_;
  return os.str();
}

void require_same(const Modulus& a, const Modulus& b) {
  if (!(a == b)) throw ModulusMismatch("modulus mismatch: " + a.describe() + " vs " + b.describe());
}

ZMod ZMod::operator+(const ZMod& o) const {
  require_same(mod_, o.mod_);
  return ZMod(mod_, residue_ + o.residue_);
}
ZMod ZMod::operator-(const ZMod& o) const {
  require_same(mod_, o.mod_);
  return ZMod(mod_, residue_ - o.residue_);
}
ZMod ZMod::operator*(const ZMod& o) const {
  require_same(mod_, o.mod_);
  return ZMod(mod_, residue_ * o.residue_);
}

ZModMatrix::ZModMatrix(const Modulus& mod, std::size_t rows, std::size_t cols)
    : mod_(mod), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ZModMatrix::ZModMatrix(const Modulus& mod, std::size_t cols, const std::vector<Vec>& rows)
    : mod_(mod), rows_(rows.size()), cols_(cols), data_(rows.size() * cols, 0) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("matrix: ragged row");
    for (std::size_t j = 0; j < cols; ++j) data_[i * cols + j] = mod.reduce(rows[i][j]);
  }
}

ZModMatrix ZModMatrix::from_entries(const std::vector<std::vector<ZMod>>& rows, std::size_t cols) {
  if (rows.empty() || rows.front().empty()) {
    if (!rows.empty() && cols != 0) throw DimensionMismatch("matrix: ragged row");
    throw DimensionMismatch("matrix: cannot infer modulus from empty entries");
  }
  const Modulus mod = rows.front().front().modulus();
  ZModMatrix m(mod, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("matrix: ragged row");
    for (std::size_t j = 0; j < cols; ++j) {
      require_same(mod, rows[i][j].modulus());
      m.set(i, j, rows[i][j].residue());
    }
  }
  return m;
}

ZModMatrix ZModMatrix::identity(const Modulus& mod, std::size_t n) {
  ZModMatrix m(mod, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Vec ZModMatrix::row_vec(std::size_t i) const {
  auto r = row(i);
  return Vec(r.begin(), r.end());
}

std::vector<Vec> ZModMatrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vec(i));
  return out;
}

ZModMatrix ZModMatrix::transpose() const {
  ZModMatrix t(mod_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  return t;
}

ZModMatrix ZModMatrix::operator*(const ZModMatrix& o) const {
  require_same(mod_, o.mod_);
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
  ZModMatrix p(mod_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        p.data_[i * o.cols_ + j] = mod_.reduce(p.data_[i * o.cols_ + j] + a * o(k, j));
    }
  return p;
}

ZModMatrix ZModMatrix::operator+(const ZModMatrix& o) const {
  require_same(mod_, o.mod_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum: shapes differ");
  ZModMatrix s(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = mod_.add(data_[i], o.data_[i]);
  return s;
}

ZModMatrix ZModMatrix::operator-(const ZModMatrix& o) const {
  require_same(mod_, o.mod_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference: shapes differ");
  ZModMatrix s(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = mod_.sub(data_[i], o.data_[i]);
  return s;
}

bool ZModMatrix::operator==(const ZModMatrix& o) const {
  return mod_ == o.mod_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Vec vec_add(const Modulus& m, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum: lengths differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = m.add(a[i], b[i]);
  return r;
}

Vec vec_sub(const Modulus& m, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference: lengths differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = m.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const Modulus& m, std::int64_t s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = m.mul(s, a[i]);
  return r;
}

void vec_axpy(const Modulus& m, std::int64_t s, const Vec& x, Vec& y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: lengths differ");
  s = m.reduce(s);
  if (s == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = m.reduce(y[i] + s * x[i]);
}

bool vec_is_zero(const Vec& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

Vec vec_mat(const Vec& x, const ZModMatrix& m) {
  if (x.size() != m.rows()) throw DimensionMismatch("vector-matrix product: length mismatch");
  const Modulus& mod = m.modulus();
  Vec r(m.cols(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = mod.reduce(r[j] + x[i] * m(i, j));
  }
  return r;
}

}  // namespace logcap
