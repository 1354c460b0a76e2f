#include "g2cm/intmatrix.hpp"

#include <sstream>

namespace g2cm {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const BigInt& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    IntMatrix r(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    IntMatrix r(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::mul_scalar(const BigInt& c) const {
    IntMatrix r(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] * c;
    return r;
}

BigInt IntMatrix::det() const {
    // Bareiss fraction-free elimination
    int n = rows_;
    IntMatrix m(*this);
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
    IntMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
        os << "]";
    }
    return os.str();
}

IntMatrix hnf(const IntMatrix& m_in) {
    IntMatrix m(m_in);
    int rows = m.rows(), cols = m.cols();
    int jhi = cols - 1;
    for (int i = rows - 1; i >= 0; --i) {
        // eliminate row i among columns 0..jhi down to a single nonzero
        while (true) {
            int nz = -1, cnt = 0;
            for (int j = 0; j <= jhi; ++j)
                if (m.at(i, j) != 0) {
                    ++cnt;
                    if (nz < 0 || abs(m.at(i, j)) < abs(m.at(i, nz))) nz = j;
                }
            if (cnt == 0) throw Error("hnf: rank-deficient input");
            if (cnt == 1) {
                // move pivot column to position jhi
                if (nz != jhi)
                    for (int r = 0; r < rows; ++r) std::swap(m.at(r, nz), m.at(r, jhi));
                break;
            }
            for (int j = 0; j <= jhi; ++j) {
                if (j == nz || m.at(i, j) == 0) continue;
                BigInt q = div_floor(m.at(i, j), m.at(i, nz));
                // round-to-nearest quotient keeps entries small
                if (2 * (m.at(i, j) - q * m.at(i, nz)) > abs(m.at(i, nz))) q += (m.at(i, nz) > 0 ? 1 : -1);
                if (q != 0)
                    for (int r = 0; r < rows; ++r) m.at(r, j) -= q * m.at(r, nz);
            }
        }
        if (m.at(i, jhi) < 0)
            for (int r = 0; r < rows; ++r) m.at(r, jhi) = -m.at(r, jhi);
        // reduce columns right of the pivot column
        for (int j = jhi + 1; j < cols; ++j) {
            BigInt q = div_floor(m.at(i, j), m.at(i, jhi));
            if (q != 0)
                for (int r = 0; r < rows; ++r) m.at(r, j) -= q * m.at(r, jhi);
        }
        --jhi;
        if (jhi < i - 1) throw Error("hnf: rank-deficient input");
    }
    // the last `rows` columns hold the result; pivot of row i is at column (cols-rows+i)
    IntMatrix h(rows, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) h.at(i, j) = m.at(i, cols - rows + j);
    return h;
}

SnfResult snf(const IntMatrix& m_in) {
    int rows = m_in.rows(), cols = m_in.cols();
    SnfResult r{m_in, IntMatrix::identity(rows), IntMatrix::identity(cols)};
    IntMatrix& d = r.d;
    int n = std::min(rows, cols);
    for (int k = 0; k < n; ++k) {
        while (true) {
            // find pivot: smallest nonzero |entry| in submatrix [k.., k..]
            int pi = -1, pj = -1;
            for (int i = k; i < rows; ++i)
                for (int j = k; j < cols; ++j)
                    if (d.at(i, j) != 0 &&
                        (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) break;  // all zero
            if (pi != k) {
                for (int j = 0; j < cols; ++j) std::swap(d.at(k, j), d.at(pi, j));
                for (int j = 0; j < rows; ++j) std::swap(r.left.at(k, j), r.left.at(pi, j));
            }
            if (pj != k) {
                for (int i = 0; i < rows; ++i) std::swap(d.at(i, k), d.at(i, pj));
                for (int i = 0; i < cols; ++i) std::swap(r.right.at(i, k), r.right.at(i, pj));
            }
            bool clean = true;
            for (int i = k + 1; i < rows; ++i) {
                BigInt q = div_floor(d.at(i, k), d.at(k, k));
                if (2 * (d.at(i, k) - q * d.at(k, k)) > abs(d.at(k, k))) q += (d.at(k, k) > 0 ? 1 : -1);
                if (q != 0) {
                    for (int j = 0; j < cols; ++j) d.at(i, j) -= q * d.at(k, j);
                    for (int j = 0; j < rows; ++j) r.left.at(i, j) -= q * r.left.at(k, j);
                }
                if (d.at(i, k) != 0) clean = false;
            }
            for (int j = k + 1; j < cols; ++j) {
                BigInt q = div_floor(d.at(k, j), d.at(k, k));
                if (2 * (d.at(k, j) - q * d.at(k, k)) > abs(d.at(k, k))) q += (d.at(k, k) > 0 ? 1 : -1);
                if (q != 0) {
                    for (int i = 0; i < rows; ++i) d.at(i, j) -= q * d.at(i, k);
                    for (int i = 0; i < cols; ++i) r.right.at(i, j) -= q * r.right.at(i, k);
                }
                if (d.at(k, j) != 0) clean = false;
            }
            if (clean) {
                bool restart = false;
                // divisibility: d[k][k] must divide every later entry
                for (int i = k + 1; i < rows && !restart; ++i)
                    for (int j = k + 1; j < cols && !restart; ++j)
                        if (d.at(i, j) % d.at(k, k) != 0) {
                            // add row i to row k, redo
                            for (int t = 0; t < cols; ++t) d.at(k, t) += d.at(i, t);
                            for (int t = 0; t < rows; ++t) r.left.at(k, t) += r.left.at(i, t);
                            restart = true;
                        }
                if (!restart) break;
            }
        }
        if (d.at(k, k) < 0) {
            for (int j = 0; j < cols; ++j) d.at(k, j) = -d.at(k, j);
            for (int j = 0; j < rows; ++j) r.left.at(k, j) = -r.left.at(k, j);
        }
    }
    return r;
}

IntMatrix kernel_mod_p(const IntMatrix& m_in, const BigInt& p) {
    int rows = m_in.rows(), cols = m_in.cols();
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = mod_floor(m_in.at(i, j), p);
    std::vector<int> pivot_col(rows, -1);
    int rank = 0;
    for (int j = 0; j < cols && rank < rows; ++j) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (m.at(i, j) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int t = 0; t < cols; ++t) std::swap(m.at(rank, t), m.at(piv, t));
        BigInt inv = *inv_mod(m.at(rank, j), p);
        for (int t = 0; t < cols; ++t) m.at(rank, t) = mod_floor(m.at(rank, t) * inv, p);
        for (int i = 0; i < rows; ++i) {
            if (i == rank || m.at(i, j) == 0) continue;
            BigInt f = m.at(i, j);
            for (int t = 0; t < cols; ++t)
                m.at(i, t) = mod_floor(m.at(i, t) - f * m.at(rank, t), p);
        }
        pivot_col[rank] = j;
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int i = 0; i < rank; ++i) is_pivot[pivot_col[i]] = true;
    IntMatrix ker(cols, cols - rank);
    int kc = 0;
    for (int j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        ker.at(j, kc) = 1;
        for (int i = 0; i < rank; ++i)
            ker.at(pivot_col[i], kc) = mod_floor(-m.at(i, j), p);
        ++kc;
    }
    return ker;
}

// ---------------------------------------------------------------- QMatrix

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_int(const IntMatrix& m) {
    QMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = BigRat(m.at(i, j));
    return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const BigRat& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

BigRat QMatrix::det() const {
    QMatrix m(*this);
    int n = rows_;
    BigRat d = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            d = -d;
        }
        d *= m.at(k, k);
        BigRat inv = 1 / m.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            BigRat f = m.at(i, k) * inv;
            if (f == 0) continue;
            for (int j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return d;
}

QMatrix QMatrix::inverse() const {
    int n = rows_;
    QMatrix m(*this), inv = identity(n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) throw Error("QMatrix::inverse: singular");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(k, j), m.at(piv, j));
                std::swap(inv.at(k, j), inv.at(piv, j));
            }
        BigRat f = 1 / m.at(k, k);
        for (int j = 0; j < n; ++j) {
            m.at(k, j) *= f;
            inv.at(k, j) *= f;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || m.at(i, k) == 0) continue;
            BigRat g = m.at(i, k);
            for (int j = 0; j < n; ++j) {
                m.at(i, j) -= g * m.at(k, j);
                inv.at(i, j) -= g * inv.at(k, j);
            }
        }
    }
    return inv;
}

std::vector<BigRat> QMatrix::solve(const std::vector<BigRat>& b) const {
    QMatrix m(*this);
    std::vector<BigRat> v(b);
    int n = rows_;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) throw Error("QMatrix::solve: singular");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            std::swap(v[k], v[piv]);
        }
        BigRat f = 1 / m.at(k, k);
        for (int j = 0; j < n; ++j) m.at(k, j) *= f;
        v[k] *= f;
        for (int i = 0; i < n; ++i) {
            if (i == k || m.at(i, k) == 0) continue;
            BigRat g = m.at(i, k);
            for (int j = 0; j < n; ++j) m.at(i, j) -= g * m.at(k, j);
            v[i] -= g * v[k];
        }
    }
    return v;
}

} // namespace g2cm
