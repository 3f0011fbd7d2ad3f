#ifndef FINCHAR_ZDD_HPP
#define FINCHAR_ZDD_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "finchar/poly.hpp"

namespace finchar {

class ZddStore;

// Boolean polynomial in algebraic normal form: a hash-consed node of a
// zero-suppressed decision diagram whose monomial set is the ANF support.
// Two polynomials over the same store are equal iff their ids are equal.
struct BoolPoly {
    ZddStore* store = nullptr;
    std::uint32_t id = 0;

    friend bool operator==(const BoolPoly& a, const BoolPoly& b) {
        return a.store == b.store && a.id == b.id;
    }
};

// Append-only node store with unique table and operation caches.  Node
// semantics: node(v, lo, hi) = lo + x_v * hi, with v strictly above the
// root variables of both children and no node with hi = bottom.  A store is
// single-owner; all operations on one store must be externally serialized,
// and node ids are meaningless across stores.
class ZddStore {
public:
    static constexpr std::uint32_t kBot = 0;  // the zero polynomial
    static constexpr std::uint32_t kTop = 1;  // the constant 1

    ZddStore();

    BoolPoly bot() { return {this, kBot}; }
    BoolPoly top() { return {this, kTop}; }
    BoolPoly var(std::uint32_t v);
    // Monomial from distinct variable indices (any order).
    BoolPoly monomial(std::vector<std::uint32_t> vars);

    BoolPoly add(BoolPoly a, BoolPoly b);
    // ANF product with x^2 = x; bumps mul_count when both operands are
    // non-constant.
    BoolPoly mul(BoolPoly a, BoolPoly b);
    // Set union of monomial supports (not an ANF operation; used by the
    // distinct-monomial instrumentation).
    BoolPoly support_union(BoolPoly a, BoolPoly b);

    bool is_const(BoolPoly p) const { return p.id <= kTop; }
    std::uint32_t cls(BoolPoly p) const;  // root variable, 0 for constants

    struct Split {
        std::uint32_t cls;
        BoolPoly initial;  // hi branch
        BoolPoly tail;     // lo branch
    };
    // p = initial * x_cls + tail; throws std::invalid_argument on constants.
    Split split(BoolPoly p);

    struct Cofactors {
        BoolPoly without;  // part free of x_v
        BoolPoly with;     // coefficient of x_v
    };
    // p = without + x_v * with, for any v (not only the root variable).
    Cofactors cofactors(BoolPoly p, std::uint32_t v);

    // Sum of monomial sizes with the constant monomial counting 1.
    std::uint64_t length(BoolPoly p);
    std::uint64_t term_count(BoolPoly p);
    std::uint32_t total_degree(BoolPoly p);
    bool has_const_term(BoolPoly p) const;

    bool eval(BoolPoly p, const std::vector<std::uint8_t>& point) const;

    // Conversions; the Poly side must be over a q = 2 spec.
    BoolPoly from_poly(const Poly& p);
    Poly to_poly(BoolPoly p, const FieldSpecPtr& spec, std::uint32_t nvars);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t cache_size() const { return cache_.size(); }
    std::uint64_t mul_count() const { return mul_count_; }

    // Store-independent structural fingerprint: equal polynomials hash
    // equally across stores.
    std::uint64_t fingerprint(BoolPoly p);

    // Drops the operation caches (between solves); nodes are kept.
    void clear_caches();

    // Validates zero-suppression, variable ordering and uniqueness over the
    // whole store.
    bool audit() const;

private:
    struct Node {
        std::uint32_t var, lo, hi;
    };
    struct NodeKey {
        std::uint32_t var, lo, hi;
        bool operator==(const NodeKey&) const = default;
    };
    struct NodeKeyHash {
        std::size_t operator()(const NodeKey& k) const {
            std::uint64_t h = (std::uint64_t(k.var) << 48) ^ (std::uint64_t(k.lo) << 24) ^ k.hi;
            h ^= h >> 33;
            h *= 0xff51afd7ed558ccdULL;
            h ^= h >> 33;
            return static_cast<std::size_t>(h);
        }
    };
    struct OpKey {
        std::uint8_t op;
        std::uint32_t a, b;
        bool operator==(const OpKey&) const = default;
    };
    struct OpKeyHash {
        std::size_t operator()(const OpKey& k) const {
            std::uint64_t h = (std::uint64_t(k.op) << 56) ^ (std::uint64_t(k.a) << 28) ^ k.b;
            h ^= h >> 30;
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 31;
            return static_cast<std::size_t>(h);
        }
    };

    std::uint32_t mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
    std::uint32_t add_rec(std::uint32_t a, std::uint32_t b);
    std::uint32_t mul_rec(std::uint32_t a, std::uint32_t b);
    std::uint32_t union_rec(std::uint32_t a, std::uint32_t b);
    void ensure_attrs(std::uint32_t id);
    void check_same_store(BoolPoly a, BoolPoly b) const;

    std::vector<Node> nodes_;
    std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> unique_;
    std::unordered_map<OpKey, std::uint32_t, OpKeyHash> cache_;
    // lazily computed per-node attributes, never invalidated
    std::vector<std::uint64_t> length_, terms_;
    std::vector<std::int32_t> tdeg_;
    std::vector<std::uint64_t> fp_;
    std::uint64_t mul_count_ = 0;
};

inline BoolPoly operator+(BoolPoly a, BoolPoly b) { return a.store->add(a, b); }
inline BoolPoly operator*(BoolPoly a, BoolPoly b) { return a.store->mul(a, b); }

}  // namespace finchar

#endif
