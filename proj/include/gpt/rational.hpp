#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpt {

// Exact arithmetic everywhere in the core. cpp_rational keeps values in
// lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using RVec = std::vector<Rational>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class LayoutError : public Error {
 public:
  explicit LayoutError(const std::string& what) : Error(what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

// Dense rational matrix, row-major.
class RMat {
 public:
  RMat() : rows_(0), cols_(0) {}
  RMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RMat identity(std::size_t n);
  static RMat from_rows(const std::vector<RVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  RVec row(std::size_t r) const;
  RVec col(std::size_t c) const;

  RMat operator*(const RMat& other) const;
  RVec operator*(const RVec& v) const;
  RMat operator+(const RMat& other) const;
  RMat operator-(const RMat& other) const;
  RMat scaled(const Rational& k) const;
  RMat transposed() const;

  bool operator==(const RMat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

Rational dot(const RVec& a, const RVec& b);
RVec vec_sub(const RVec& a, const RVec& b);
RVec vec_add(const RVec& a, const RVec& b);
RVec vec_scaled(const RVec& a, const Rational& k);

// Exact Gaussian elimination helpers.
std::size_t rank(RMat m);
RMat inverse(const RMat& m);  // throws ValidationError if singular
Rational determinant(RMat m);

// Lexicographic comparison of rational vectors.
bool lex_less(const RVec& a, const RVec& b);

}  // namespace gpt
