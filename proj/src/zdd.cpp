#include "finchar/zdd.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace finchar {

namespace {
enum : std::uint8_t { OP_ADD = 1, OP_MUL = 2, OP_UNION = 3, OP_COF0 = 4, OP_COF1 = 5 };
}

ZddStore::ZddStore() {
    nodes_.push_back({0, 0, 0});  // bottom
    nodes_.push_back({0, 0, 0});  // top
}

void ZddStore::check_same_store(BoolPoly a, BoolPoly b) const {
    if (a.store != b.store || a.store != this)
        throw std::invalid_argument("operands from different ZDD stores");
}

std::uint32_t ZddStore::mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) {
    if (hi == kBot) return lo;  // zero-suppression
    NodeKey key{var, lo, hi};
    auto it = unique_.find(key);
    if (it != unique_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({var, lo, hi});
    unique_.emplace(key, id);
    return id;
}

BoolPoly ZddStore::var(std::uint32_t v) {
    if (v < 1) throw std::invalid_argument("variable index must be positive");
    return {this, mk(v, kBot, kTop)};
}

BoolPoly ZddStore::monomial(std::vector<std::uint32_t> vars) {
    std::sort(vars.begin(), vars.end());
    std::uint32_t cur = kTop;
    std::uint32_t prev = 0;
    for (std::uint32_t v : vars) {
        if (v < 1) throw std::invalid_argument("variable index must be positive");
        if (v == prev) continue;  // x^2 = x
        cur = mk(v, kBot, cur);
        prev = v;
    }
    return {this, cur};
}

std::uint32_t ZddStore::cls(BoolPoly p) const { return p.id <= kTop ? 0 : nodes_[p.id].var; }

ZddStore::Split ZddStore::split(BoolPoly p) {
    if (is_const(p)) throw std::invalid_argument("split of a constant Boolean polynomial");
    const Node& n = nodes_[p.id];
    return {n.var, {this, n.hi}, {this, n.lo}};
}

std::uint32_t ZddStore::add_rec(std::uint32_t a, std::uint32_t b) {
    if (a == kBot) return b;
    if (b == kBot) return a;
    if (a == b) return kBot;  // characteristic 2
    if (a > b) std::swap(a, b);
    OpKey key{OP_ADD, a, b};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    // b is not a terminal here: a < b and a != kBot, so b >= 2
    const Node nb = nodes_[b];
    std::uint32_t r;
    if (a == kTop || nodes_[a].var < nb.var) {
        r = mk(nb.var, add_rec(a, nb.lo), nb.hi);
    } else {
        const Node na = nodes_[a];
        if (na.var == nb.var) {
            r = mk(na.var, add_rec(na.lo, nb.lo), add_rec(na.hi, nb.hi));
        } else {
            // na.var > nb.var
            r = mk(na.var, add_rec(na.lo, b), na.hi);
        }
    }
    cache_.emplace(key, r);
    return r;
}

BoolPoly ZddStore::add(BoolPoly a, BoolPoly b) {
    check_same_store(a, b);
    return {this, add_rec(a.id, b.id)};
}

std::uint32_t ZddStore::mul_rec(std::uint32_t a, std::uint32_t b) {
    if (a == kBot || b == kBot) return kBot;
    if (a == kTop) return b;
    if (b == kTop) return a;
    if (a == b) return a;  // P*P = P
    if (a > b) std::swap(a, b);
    OpKey key{OP_MUL, a, b};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Node na = nodes_[a];
    const Node nb = nodes_[b];
    const std::uint32_t v = std::max(na.var, nb.var);
    std::uint32_t a1 = kBot, a0 = a, b1 = kBot, b0 = b;
    if (na.var == v) {
        a1 = na.hi;
        a0 = na.lo;
    }
    if (nb.var == v) {
        b1 = nb.hi;
        b0 = nb.lo;
    }
    // (a1 x + a0)(b1 x + b0) = (a1 b1 + a1 b0 + a0 b1) x + a0 b0 with x^2 = x
    std::uint32_t hi = add_rec(add_rec(mul_rec(a1, b1), mul_rec(a1, b0)), mul_rec(a0, b1));
    std::uint32_t r = mk(v, mul_rec(a0, b0), hi);
    cache_.emplace(key, r);
    return r;
}

BoolPoly ZddStore::mul(BoolPoly a, BoolPoly b) {
    check_same_store(a, b);
    if (!is_const(a) && !is_const(b)) ++mul_count_;
    return {this, mul_rec(a.id, b.id)};
}

std::uint32_t ZddStore::union_rec(std::uint32_t a, std::uint32_t b) {
    if (a == kBot || a == b) return b;
    if (b == kBot) return a;
    if (a > b) std::swap(a, b);
    OpKey key{OP_UNION, a, b};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Node nb = nodes_[b];
    std::uint32_t r;
    if (a == kTop || nodes_[a].var < nb.var) {
        r = mk(nb.var, union_rec(a, nb.lo), nb.hi);
    } else {
        const Node na = nodes_[a];
        if (na.var == nb.var) {
            r = mk(na.var, union_rec(na.lo, nb.lo), union_rec(na.hi, nb.hi));
        } else {
            r = mk(na.var, union_rec(na.lo, b), na.hi);
        }
    }
    cache_.emplace(key, r);
    return r;
}

BoolPoly ZddStore::support_union(BoolPoly a, BoolPoly b) {
    check_same_store(a, b);
    return {this, union_rec(a.id, b.id)};
}

ZddStore::Cofactors ZddStore::cofactors(BoolPoly p, std::uint32_t v) {
    if (p.store != this) throw std::invalid_argument("operand from a different ZDD store");
    if (p.id <= kTop || nodes_[p.id].var < v) return {p, bot()};
    if (nodes_[p.id].var == v) return {{this, nodes_[p.id].lo}, {this, nodes_[p.id].hi}};
    OpKey k0{OP_COF0, p.id, v}, k1{OP_COF1, p.id, v};
    auto it0 = cache_.find(k0);
    if (it0 != cache_.end()) {
        auto it1 = cache_.find(k1);
        if (it1 != cache_.end()) return {{this, it0->second}, {this, it1->second}};
    }
    const Node n = nodes_[p.id];
    Cofactors lo = cofactors({this, n.lo}, v);
    Cofactors hi = cofactors({this, n.hi}, v);
    Cofactors out{{this, mk(n.var, lo.without.id, hi.without.id)},
                  {this, mk(n.var, lo.with.id, hi.with.id)}};
    cache_.emplace(k0, out.without.id);
    cache_.emplace(k1, out.with.id);
    return out;
}

void ZddStore::ensure_attrs(std::uint32_t id) {
    if (id < length_.size() && terms_[id] != UINT64_MAX) return;
    if (length_.size() < nodes_.size()) {
        length_.resize(nodes_.size(), UINT64_MAX);
        terms_.resize(nodes_.size(), UINT64_MAX);
        tdeg_.resize(nodes_.size(), -1);
        length_[kBot] = 0;
        terms_[kBot] = 0;
        tdeg_[kBot] = 0;
        length_[kTop] = 0;  // raw length; the constant monomial is charged in length()
        terms_[kTop] = 1;
        tdeg_[kTop] = 0;
    }
    // iterative DFS to avoid deep recursion
    std::vector<std::uint32_t> stack{id};
    while (!stack.empty()) {
        std::uint32_t cur = stack.back();
        if (terms_[cur] != UINT64_MAX) {
            stack.pop_back();
            continue;
        }
        const Node& n = nodes_[cur];
        if (terms_[n.lo] == UINT64_MAX) {
            stack.push_back(n.lo);
            continue;
        }
        if (terms_[n.hi] == UINT64_MAX) {
            stack.push_back(n.hi);
            continue;
        }
        terms_[cur] = terms_[n.lo] + terms_[n.hi];
        length_[cur] = length_[n.lo] + length_[n.hi] + terms_[n.hi];
        tdeg_[cur] = std::max(tdeg_[n.lo], 1 + tdeg_[n.hi]);
        stack.pop_back();
    }
}

std::uint64_t ZddStore::length(BoolPoly p) {
    ensure_attrs(p.id);
    return length_[p.id] + (has_const_term(p) ? 1 : 0);
}

std::uint64_t ZddStore::term_count(BoolPoly p) {
    ensure_attrs(p.id);
    return terms_[p.id];
}

std::uint32_t ZddStore::total_degree(BoolPoly p) {
    ensure_attrs(p.id);
    return static_cast<std::uint32_t>(tdeg_[p.id]);
}

bool ZddStore::has_const_term(BoolPoly p) const {
    std::uint32_t cur = p.id;
    while (cur > kTop) cur = nodes_[cur].lo;
    return cur == kTop;
}

bool ZddStore::eval(BoolPoly p, const std::vector<std::uint8_t>& point) const {
    std::unordered_map<std::uint32_t, bool> memo;
    std::vector<std::uint32_t> stack{p.id};
    memo[kBot] = false;
    memo[kTop] = true;
    while (!stack.empty()) {
        std::uint32_t cur = stack.back();
        if (memo.count(cur)) {
            stack.pop_back();
            continue;
        }
        const Node& n = nodes_[cur];
        auto lo = memo.find(n.lo), hi = memo.find(n.hi);
        if (lo == memo.end()) {
            stack.push_back(n.lo);
            continue;
        }
        if (hi == memo.end()) {
            stack.push_back(n.hi);
            continue;
        }
        if (n.var > point.size()) throw std::invalid_argument("point dimension mismatch");
        bool bit = point[n.var - 1] != 0;
        memo[cur] = lo->second ^ (bit && hi->second);
        stack.pop_back();
    }
    return memo[p.id];
}

BoolPoly ZddStore::from_poly(const Poly& p) {
    if (p.spec()->q() != 2) throw std::invalid_argument("ZDD polynomials require q = 2");
    BoolPoly acc = bot();
    for (const auto& t : p.terms()) {
        std::vector<std::uint32_t> vars;
        vars.reserve(t.mono.factors.size());
        for (const auto& f : t.mono.factors) vars.push_back(f.var);
        acc = add(acc, monomial(std::move(vars)));
    }
    return acc;
}

Poly ZddStore::to_poly(BoolPoly p, const FieldSpecPtr& spec, std::uint32_t nvars) {
    if (spec->q() != 2) throw std::invalid_argument("ZDD polynomials require q = 2");
    std::vector<Term> terms;
    std::vector<VarPow> prefix;
    // DFS over monomial paths; prefix[0..depth) holds the variables chosen
    // on the way down
    struct Frame {
        std::uint32_t node;
        std::size_t depth;
    };
    std::vector<Frame> stack{{p.id, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.node == kBot) continue;
        if (f.node == kTop) {
            Term t;
            t.coef = spec->one();
            t.mono.factors.assign(prefix.begin(), prefix.begin() + f.depth);
            terms.push_back(std::move(t));
            continue;
        }
        const Node& n = nodes_[f.node];
        stack.push_back({n.lo, f.depth});
        if (prefix.size() <= f.depth) prefix.resize(f.depth + 1);
        prefix[f.depth] = {static_cast<std::uint16_t>(n.var), 1};
        stack.push_back({n.hi, f.depth + 1});
    }
    return Poly::from_terms(spec, nvars, std::move(terms));
}

std::uint64_t ZddStore::fingerprint(BoolPoly p) {
    if (p.store != this) throw std::invalid_argument("operand from a different ZDD store");
    if (fp_.size() < nodes_.size()) {
        fp_.resize(nodes_.size(), 0);
        fp_[kBot] = 0x9e3779b97f4a7c15ULL;
        fp_[kTop] = 0xbf58476d1ce4e5b9ULL;
    }
    auto mix = [](std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    };
    std::vector<std::uint32_t> stack{p.id};
    while (!stack.empty()) {
        std::uint32_t cur = stack.back();
        if (fp_[cur] != 0) {
            stack.pop_back();
            continue;
        }
        const Node& n = nodes_[cur];
        if (fp_[n.lo] == 0) {
            stack.push_back(n.lo);
            continue;
        }
        if (fp_[n.hi] == 0) {
            stack.push_back(n.hi);
            continue;
        }
        std::uint64_t h = mix(n.var * 0x9e3779b97f4a7c15ULL + 0x165667b19e3779f9ULL);
        h = mix(h ^ (fp_[n.lo] + 0x9e3779b97f4a7c15ULL));
        h = mix(h ^ (fp_[n.hi] * 0xc2b2ae3d27d4eb4fULL));
        fp_[cur] = h == 0 ? 1 : h;
        stack.pop_back();
    }
    return fp_[p.id];
}

void ZddStore::clear_caches() { cache_.clear(); }

bool ZddStore::audit() const {
    std::unordered_set<NodeKey, NodeKeyHash> seen;
    for (std::uint32_t id = 2; id < nodes_.size(); ++id) {
        const Node& n = nodes_[id];
        if (n.hi == kBot) return false;  // zero-suppression violated
        if (n.lo >= id || n.hi >= id) return false;
        std::uint32_t lo_var = n.lo <= kTop ? 0 : nodes_[n.lo].var;
        std::uint32_t hi_var = n.hi <= kTop ? 0 : nodes_[n.hi].var;
        if (n.var <= lo_var || n.var <= hi_var) return false;  // ordering violated
        if (!seen.insert({n.var, n.lo, n.hi}).second) return false;  // duplicate node
    }
    return true;
}

}  // namespace finchar
