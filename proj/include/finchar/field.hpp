#ifndef FINCHAR_FIELD_HPP
#define FINCHAR_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace finchar {

// Element of F_q, stored as an integer code in [0, q).  For q = p^k the
// code is the base-p encoding of the coefficient vector in the polynomial
// basis of the chosen modulus.
struct FieldElement {
    std::uint16_t code = 0;

    friend bool operator==(FieldElement a, FieldElement b) { return a.code == b.code; }
    friend bool operator!=(FieldElement a, FieldElement b) { return a.code != b.code; }
    friend bool operator<(FieldElement a, FieldElement b) { return a.code < b.code; }
};

// Arithmetic context for F_q, q = p^k.  Immutable after construction and
// safe to share across threads.
class FieldSpec {
public:
    // modulus: coefficients of a degree-k irreducible polynomial over F_p,
    // highest degree first ({1,1,1} is t^2+t+1).  Ignored for k = 1; when
    // empty and k > 1 the lowest-lexicographic irreducible monic polynomial
    // is used.
    static std::shared_ptr<const FieldSpec> make(std::uint32_t p, std::uint32_t k = 1,
                                                 std::vector<std::uint16_t> modulus = {},
                                                 std::uint32_t max_q = 65536);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }

    // Modulus coefficients, highest degree first (empty for k = 1).
    const std::vector<std::uint16_t>& modulus() const { return modulus_high_first_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement element(std::uint32_t code) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    // Throws std::domain_error on a = 0.
    FieldElement inv(FieldElement a) const;
    // Square-and-multiply; 0^0 = 1.
    FieldElement pow(FieldElement a, std::uint64_t e) const;

    // "2", "3^2", ... as used by the system file header.
    std::string label() const;

    bool operator==(const FieldSpec& other) const {
        return p_ == other.p_ && k_ == other.k_ && modulus_high_first_ == other.modulus_high_first_;
    }

private:
    FieldSpec() = default;

    std::uint32_t p_ = 0, k_ = 0, q_ = 0;
    std::vector<std::uint16_t> modulus_high_first_;  // empty when k = 1
    std::vector<std::uint16_t> modulus_low_;         // m[i] = coeff of t^i, size k+1, monic

    bool use_mul_table_ = false;
    std::vector<std::uint16_t> mul_table_;  // q*q when small enough
    std::vector<std::uint16_t> exp_table_;  // g^i for i in [0, q-1), k > 1
    std::vector<std::int32_t> log_table_;   // inverse of exp_table_, -1 at 0
    std::vector<std::uint16_t> inv_table_;

    std::uint16_t raw_mul(std::uint16_t a, std::uint16_t b) const;
    void build_tables();
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

}  // namespace finchar

#endif
