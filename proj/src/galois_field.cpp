#include "ctheta/galois_field.hpp"

#include "ctheta/errors.hpp"

#include <utility>

namespace ctheta {

namespace {

struct FieldSpec {
    int q, p, e;
    std::vector<int> modulus;  // monic, lowest degree first, leading 1 omitted
};

const FieldSpec* find_spec(int q) {
    static const std::vector<FieldSpec> specs = {
        {2, 2, 1, {}}, {3, 3, 1, {}}, {4, 2, 2, {1, 1}}, {5, 5, 1, {}},
        {7, 7, 1, {}}, {8, 2, 3, {1, 1, 0}}, {9, 3, 2, {2, 2}},
    };
    for (const auto& s : specs) {
        if (s.q == q) return &s;
    }
    return nullptr;
}

std::vector<int> digits(int a, int p, int e) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) {
        d[i] = a % p;
        a /= p;
    }
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int a = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
    return a;
}

}  // namespace

bool is_supported_field_order(int q) { return find_spec(q) != nullptr; }

GaloisField::GaloisField(int q) : q_(q) {
    const FieldSpec* spec = find_spec(q);
    if (spec == nullptr) {
        throw InvalidArgument("unsupported field order " + std::to_string(q) + " (supported: 2,3,4,5,7,8,9)");
    }
    p_ = spec->p;
    e_ = spec->e;
    modulus_ = spec->modulus;
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        const auto da = digits(a, p_, e_);
        for (int b = 0; b < q; ++b) {
            const auto db = digits(b, p_, e_);
            std::vector<int> sum(e_);
            for (int i = 0; i < e_; ++i) sum[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = undigits(sum, p_);

            // Schoolbook product followed by reduction with x^e = -modulus.
            std::vector<int> prod(2 * e_ - 1, 0);
            for (int i = 0; i < e_; ++i)
                for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (int k = 2 * e_ - 2; k >= e_; --k) {
                const int c = prod[k];
                if (c == 0) continue;
                prod[k] = 0;
                for (int i = 0; i < e_; ++i) {
                    prod[k - e_ + i] = ((prod[k - e_ + i] - c * modulus_[i]) % p_ + p_) % p_;
                }
            }
            prod.resize(e_);
            mul_[a * q + b] = undigits(prod, p_);
        }
    }
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (add_[a * q + b] == 0) neg_[a] = b;
            if (mul_[a * q + b] == 1) inv_[a] = b;
        }
    }
}

int GaloisField::inv(int a) const {
    if (a == 0) throw InvalidArgument("inverse of zero in F_" + std::to_string(q_));
    return inv_[a];
}

std::string GaloisField::label(int a) const {
    if (e_ == 1) return std::to_string(a);
    const auto d = digits(a, p_, e_);
    std::string out;
    for (int i = e_ - 1; i >= 0; --i) {
        if (d[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0 || d[i] != 1) out += std::to_string(d[i]);
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

int matrix_rank(const GaloisField& field, std::vector<int> m, int rows, int cols) {
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (m[r * cols + c] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        for (int k = 0; k < cols; ++k) std::swap(m[rank * cols + k], m[pivot * cols + k]);
        const int scale = field.inv(m[rank * cols + c]);
        for (int k = 0; k < cols; ++k) m[rank * cols + k] = field.mul(scale, m[rank * cols + k]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r * cols + c] == 0) continue;
            const int factor = m[r * cols + c];
            for (int k = 0; k < cols; ++k) {
                m[r * cols + k] = field.sub(m[r * cols + k], field.mul(factor, m[rank * cols + k]));
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace ctheta
