#pragma once

// Residue arithmetic over Z/l^n and dense matrices with entries in it.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace logcap {

using Vec = std::vector<std::int64_t>;

class ModulusMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool is_prime(std::uint64_t p);

/// The coefficient ring Z/l^n. Residues are kept in [0, l^n) as int64; the
/// constructor refuses moduli at or above 2^31 so products never overflow.
class Modulus {
 public:
  Modulus(unsigned prime, unsigned precision);

  unsigned prime() const { return prime_; }
  unsigned precision() const { return precision_; }
  std::int64_t value() const { return value_; }

  std::int64_t reduce(std::int64_t x) const {
    x %= value_;
    return x < 0 ? x + value_ : x;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return reduce(a * b); }
  std::int64_t neg(std::int64_t a) const { return reduce(-a); }

  /// l-adic valuation of a residue; returns precision() for zero.
  unsigned valuation(std::int64_t a) const;
  /// l^k as a residue (0 once k >= n).
  std::int64_t power_of_prime(unsigned k) const;
  /// Inverse of a unit; throws std::domain_error on non-units.
  std::int64_t inverse(std::int64_t unit) const;

  bool operator==(const Modulus& o) const {
    return prime_ == o.prime_ && precision_ == o.precision_;
  }

  std::string describe() const;

 private:
  unsigned prime_;
  unsigned precision_;
  std::int64_t value_;
};

void require_same(const Modulus& a, const Modulus& b);

class ZMod {
 public:
  ZMod(const Modulus& mod, std::int64_t value) : mod_(mod), residue_(mod.reduce(value)) {}

  const Modulus& modulus() const { return mod_; }
  std::int64_t residue() const { return residue_; }
  unsigned valuation() const { return mod_.valuation(residue_); }
  bool is_zero() const { return residue_ == 0; }

  ZMod operator+(const ZMod& o) const;
  ZMod operator-(const ZMod& o) const;
  ZMod operator*(const ZMod& o) const;
  ZMod operator-() const { return ZMod(mod_, -residue_); }
  bool operator==(const ZMod& o) const {
    return mod_ == o.mod_ && residue_ == o.residue_;
  }

 private:
  Modulus mod_;
  std::int64_t residue_;
};

/// Row-major dense matrix over Z/l^n. A single Modulus is stored for the
/// whole grid, so uniformity is structural.
class ZModMatrix {
 public:
  ZModMatrix(const Modulus& mod, std::size_t rows, std::size_t cols);
  ZModMatrix(const Modulus& mod, std::size_t cols, const std::vector<Vec>& rows);

  /// Builds from ZMod entries; throws ModulusMismatch on mixed moduli and
  /// DimensionMismatch on ragged input. `cols` is needed for empty input.
  static ZModMatrix from_entries(const std::vector<std::vector<ZMod>>& rows, std::size_t cols);
  static ZModMatrix identity(const Modulus& mod, std::size_t n);

  const Modulus& modulus() const { return mod_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = mod_.reduce(v); }
  ZMod entry(std::size_t i, std::size_t j) const { return ZMod(mod_, (*this)(i, j)); }

  std::span<const std::int64_t> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  Vec row_vec(std::size_t i) const;
  std::vector<Vec> row_list() const;

  ZModMatrix transpose() const;
  ZModMatrix operator*(const ZModMatrix& o) const;
  ZModMatrix operator+(const ZModMatrix& o) const;
  ZModMatrix operator-(const ZModMatrix& o) const;
  bool operator==(const ZModMatrix& o) const;

 private:
  Modulus mod_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> data_;
};

// Row-vector helpers. All inputs are assumed reduced.
Vec vec_add(const Modulus& m, const Vec& a, const Vec& b);
Vec vec_sub(const Modulus& m, const Vec& a, const Vec& b);
Vec vec_scale(const Modulus& m, std::int64_t s, const Vec& a);
void vec_axpy(const Modulus& m, std::int64_t s, const Vec& x, Vec& y);  // y += s*x
bool vec_is_zero(const Vec& a);
/// x * M for a row vector x.
Vec vec_mat(const Vec& x, const ZModMatrix& m);

}  // namespace logcap
