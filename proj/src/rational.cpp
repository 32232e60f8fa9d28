#include "gpt/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

namespace gpt {

using boost::multiprecision::cpp_int;

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(cpp_int(text));
    }
    cpp_int num(text.substr(0, slash));
    cpp_int den(text.substr(slash + 1));
    if (den <= 0) throw ParseError("rational denominator must be positive: " + text);
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw ParseError("bad rational literal '" + text + "': " + e.what());
  }
}

std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q) << '/' << denominator(q);
  return os.str();
}

RMat RMat::identity(std::size_t n) {
  RMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RMat RMat::from_rows(const std::vector<RVec>& rows) {
  if (rows.empty()) return RMat();
  RMat m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw LayoutError("ragged row list");
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

RVec RMat::row(std::size_t r) const {
  RVec v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

RVec RMat::col(std::size_t c) const {
  RVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

RMat RMat::operator*(const RMat& other) const {
  if (cols_ != other.rows_) throw LayoutError("matrix product dimension mismatch");
  RMat out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out.at(i, j) += aik * other.at(k, j);
    }
  return out;
}

RVec RMat::operator*(const RVec& v) const {
  if (cols_ != v.size()) throw LayoutError("matrix-vector dimension mismatch");
  RVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += at(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

RMat RMat::operator+(const RMat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw LayoutError("matrix sum dimension mismatch");
  RMat out(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + other.a_[i];
  return out;
}

RMat RMat::operator-(const RMat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw LayoutError("matrix difference dimension mismatch");
  RMat out(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - other.a_[i];
  return out;
}

RMat RMat::scaled(const Rational& k) const {
  RMat out(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * k;
  return out;
}

RMat RMat::transposed() const {
  RMat out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

Rational dot(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw LayoutError("dot product dimension mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RVec vec_sub(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw LayoutError("vector difference dimension mismatch");
  RVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RVec vec_add(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw LayoutError("vector sum dimension mismatch");
  RVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RVec vec_scaled(const RVec& a, const Rational& k) {
  RVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * k;
  return out;
}

std::size_t rank(RMat m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pivot, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c) / m.at(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

RMat inverse(const RMat& m) {
  if (m.rows() != m.cols()) throw ValidationError("inverse of non-square matrix");
  std::size_t n = m.rows();
  RMat a = m, inv = RMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a.at(pivot, c) == 0) ++pivot;
    if (pivot == n) throw ValidationError("singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a.at(c, j), a.at(pivot, j));
      std::swap(inv.at(c, j), inv.at(pivot, j));
    }
    Rational p = a.at(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(c, j) /= p;
      inv.at(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a.at(i, c) == 0) continue;
      Rational f = a.at(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(c, j);
        inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

Rational determinant(RMat m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
  std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m.at(pivot, c) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(c, j), m.at(pivot, j));
      det = -det;
    }
    det *= m.at(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m.at(i, c) == 0) continue;
      Rational f = m.at(i, c) / m.at(c, c);
      for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

bool lex_less(const RVec& a, const RVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace gpt
