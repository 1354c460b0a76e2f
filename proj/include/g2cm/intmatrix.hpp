#ifndef G2CM_INTMATRIX_HPP
#define G2CM_INTMATRIX_HPP

#include <vector>

#include "g2cm/integer.hpp"

namespace g2cm {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, BigInt(0)) {}
    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt& at(int i, int j) { return a_[i * cols_ + j]; }
    const BigInt& at(int i, int j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;
    IntMatrix mul_scalar(const BigInt& c) const;

    /// Exact determinant (fraction-free Gaussian elimination).
    BigInt det() const;

    /// Stack columns of `o` to the right.
    IntMatrix hcat(const IntMatrix& o) const;

    std::string str() const;

  private:
    int rows_, cols_;
    std::vector<BigInt> a_;
};

/// Column-style Hermite normal form of a full-column-rank lattice:
/// columns of `m` span the lattice; result is square upper-triangular with
/// positive pivots on the diagonal and 0 <= h[i][j] < h[i][i] for j > i.
/// Canonical: equal lattices give bit-identical output.
IntMatrix hnf(const IntMatrix& m);

struct SnfResult {
    IntMatrix d;      // diagonal, d_i | d_{i+1}, nonnegative
    IntMatrix left;   // unimodular
    IntMatrix right;  // unimodular, left*m*right = d
};

SnfResult snf(const IntMatrix& m);

/// Right kernel of m over F_p; returns basis vectors as columns (entries in [0,p)).
IntMatrix kernel_mod_p(const IntMatrix& m, const BigInt& p);

/// Small dense rational matrix (exact solves for basis conversions).
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, BigRat(0)) {}
    static QMatrix identity(int n);
    static QMatrix from_int(const IntMatrix& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigRat& at(int i, int j) { return a_[i * cols_ + j]; }
    const BigRat& at(int i, int j) const { return a_[i * cols_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix transpose() const;
    BigRat det() const;
    QMatrix inverse() const;  // throws on singular
    /// Solve this * x = b for one column b; throws on singular.
    std::vector<BigRat> solve(const std::vector<BigRat>& b) const;

  private:
    int rows_, cols_;
    std::vector<BigRat> a_;
};

} // namespace g2cm

#endif
