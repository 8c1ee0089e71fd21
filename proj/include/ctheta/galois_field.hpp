#pragma once

#include <string>
#include <vector>

namespace ctheta {

// Arithmetic in F_q for q = p^e. An element is stored as the integer whose
// base-p digits are its polynomial coefficients (digit i = coefficient of
// x^i). Extension fields use these fixed Conway polynomials:
//
//   F_4  x^2 + x + 1
//   F_8  x^3 + x + 1
//   F_9  x^2 + 2x + 2
//
// Prime fields need no polynomial. Other prime powers are rejected.
class GaloisField {
public:
    explicit GaloisField(int q);

    int order() const { return q_; }
    int characteristic() const { return p_; }
    int degree() const { return e_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    // Throws InvalidArgument on zero.
    int inv(int a) const;

    // "2" for prime fields, "x+1" style polynomials in the generator otherwise.
    std::string label(int a) const;

    // Coefficients of the reduction polynomial, lowest degree first
    // (empty for prime fields).
    const std::vector<int>& modulus() const { return modulus_; }

private:
    int q_, p_, e_;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_;
};

// True for the field orders this library supports: 2, 3, 4, 5, 7, 8, 9.
bool is_supported_field_order(int q);

// Row rank of a rows x cols matrix over the field.
int matrix_rank(const GaloisField& field, std::vector<int> entries, int rows, int cols);

}  // namespace ctheta
