#include "finchar/decompose.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_set>

namespace finchar {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Poly> normalize_system(std::vector<Poly> polys) {
    std::vector<Poly> out;
    out.reserve(polys.size());
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        bool dup = false;
        for (const auto& seen : out)
            if (seen == p) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(p));
    }
    return out;
}

std::vector<BoolPoly> normalize_bool_system(std::vector<BoolPoly> polys) {
    std::vector<BoolPoly> out;
    out.reserve(polys.size());
    for (auto& p : polys) {
        if (p.id == ZddStore::kBot) continue;
        bool dup = false;
        for (const auto& seen : out)
            if (seen.id == p.id) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    return out;
}

// Explicit multiplication bound of the elimination pass:
// 2n(q-1)(q-2) + n^2(q-2)(q-1) + nl(q-1); the nl family when q = 2.
std::uint64_t td_mul_bound(std::uint64_t n, std::uint64_t q, std::uint64_t l) {
    return 2 * n * (q - 1) * (q - 2) + n * n * (q - 2) * (q - 1) + n * l * (q - 1);
}

#ifndef NDEBUG
// Count vector by (class, leading degree), highest first; the elimination
// loop must decrease it strictly in lexicographic order.
std::vector<std::uint32_t> system_index(const std::vector<Poly>& ps, std::uint32_t nvars,
                                        std::uint32_t q) {
    std::vector<std::uint32_t> idx(std::size_t(nvars) * (q - 1), 0);
    for (const auto& p : ps) {
        std::uint32_t c = p.cls();
        if (c == 0) continue;
        std::uint32_t d = p.deg();
        idx[std::size_t(nvars - c) * (q - 1) + (q - 1 - d)]++;
    }
    return idx;
}
#endif

void track_poly(const Poly& p, SolveStats* stats) {
    if (!stats) return;
    stats->max_len = std::max(stats->max_len, p.length());
    stats->max_terms = std::max(stats->max_terms, static_cast<std::uint64_t>(p.terms().size()));
}

}  // namespace

void SolveStats::merge(const SolveStats& o) {
    mul_count += o.mul_count;
    max_len = std::max(max_len, o.max_len);
    max_terms = std::max(max_terms, o.max_terms);
    branch_count += o.branch_count;
    n_components += o.n_components;
    td_invocations += o.td_invocations;
    td_bound_violations += o.td_bound_violations;
    mf_invocations += o.mf_invocations;
    mf_audited_invocations += o.mf_audited_invocations;
    mf_mul_violations += o.mf_mul_violations;
    mf_len_violations += o.mf_len_violations;
    mf_len_refined_violations += o.mf_len_refined_violations;
    mf_term_violations += o.mf_term_violations;
    mf_monomial_violations += o.mf_monomial_violations;
    mf_add_violations += o.mf_add_violations;
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "tdcs") return Algorithm::tdcs;
    if (name == "tdcs2") return Algorithm::tdcs2;
    if (name == "mfcs") return Algorithm::mfcs;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::tdcs: return "tdcs";
        case Algorithm::tdcs2: return "tdcs2";
        case Algorithm::mfcs: return "mfcs";
    }
    return "?";
}

std::uint64_t default_component_cap() {
    if (const char* env = std::getenv("FINCHAR_MAX_COMPONENTS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::uint64_t(1) << 24;
}

BigInt decomposition_count(const Decomposition& d) {
    BigInt total = 0;
    for (const auto& c : d.components) total += ts_count(c);
    return total;
}

// ---------------------------------------------------------------------------
// generic elimination pass (any q)

TdTrisetResult td_triset(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                         SolveStats* stats) {
    ps = normalize_system(std::move(ps));
    const std::uint32_t q = spec->q();
    const std::uint64_t l = ps.size();
    MulCounter counter;
    MulCounter* ctr = &counter;

    TdTrisetResult res;
#ifndef NDEBUG
    auto prev_index = system_index(ps, nvars, q);
#endif
    while (!ps.empty()) {
        bool dead = false;
        for (const auto& p : ps)
            if (p.is_constant() && !p.is_zero()) {
                dead = true;
                break;
            }
        if (dead) {
            res.inconsistent = true;
            res.chain.clear();
            break;
        }

        std::uint32_t c = 0;
        for (const auto& p : ps) c = std::max(c, p.cls());
        std::vector<std::size_t> cls_idx;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (ps[i].cls() == c) cls_idx.push_back(i);

        // lowest leading degree, then fewest terms, then smallest length,
        // then input order
        std::size_t qi = cls_idx[0];
        for (std::size_t i : cls_idx) {
            const Poly& a = ps[i];
            const Poly& b = ps[qi];
            auto key = [](const Poly& p) {
                return std::make_tuple(p.deg(), p.terms().size(), p.length());
            };
            if (key(a) < key(b)) qi = i;
        }
        const Poly pivot = ps[qi];
        const std::uint32_t d = pivot.deg();
        const Poly init = pivot.initial();

        std::vector<Poly> rest;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (ps[i].cls() != c) rest.push_back(ps[i]);

        if (init.is_one()) {
            std::vector<Poly> reduced;
            bool class_cleared = true;
            for (std::size_t i : cls_idx) {
                if (i == qi) continue;
                Poly r = prem(ps[i], pivot, ctr);
                if (r.is_zero()) continue;
                track_poly(r, stats);
                if (r.cls() == c) class_cleared = false;
                reduced.push_back(std::move(r));
            }
            if (class_cleared) {
                res.chain.push_back(pivot);
                reduced.insert(reduced.end(), rest.begin(), rest.end());
                ps = normalize_system(std::move(reduced));
            } else {
                reduced.push_back(pivot);
                reduced.insert(reduced.end(), rest.begin(), rest.end());
                ps = normalize_system(std::move(reduced));
            }
        } else {
            const Poly u = pivot.tail();
            Poly ipow = pow_repeated(init, q - 2, ctr);
            Poly monic_pivot = Poly::monomial(spec, nvars, Monomial{{{static_cast<std::uint16_t>(c),
                                                                      static_cast<std::uint16_t>(d)}}},
                                              spec->one()) +
                               mul(ipow, u, ctr);
            Poly init_nonzero = mul(ipow, init, ctr) -
                                Poly::constant(spec, nvars, spec->one());  // I^(q-1) - 1
            track_poly(monic_pivot, stats);
            track_poly(init_nonzero, stats);

            // branch where the initial vanishes: (PS minus pivot) + chain + {I, U}
            std::vector<Poly> branch;
            for (std::size_t i = 0; i < ps.size(); ++i)
                if (i != qi) branch.push_back(ps[i]);
            branch.insert(branch.end(), res.chain.begin(), res.chain.end());
            branch.push_back(init);
            branch.push_back(u);
            res.branches.push_back(normalize_system(std::move(branch)));
            if (stats) stats->branch_count++;

            std::vector<Poly> reduced;
            bool class_cleared = true;
            for (std::size_t i : cls_idx) {
                if (i == qi) continue;
                Poly r = prem(ps[i], monic_pivot, ctr);
                if (r.is_zero()) continue;
                track_poly(r, stats);
                if (r.cls() == c) class_cleared = false;
                reduced.push_back(std::move(r));
            }
            if (!init_nonzero.is_zero()) reduced.push_back(init_nonzero);
            reduced.insert(reduced.end(), rest.begin(), rest.end());
            if (class_cleared) {
                res.chain.push_back(monic_pivot);
            } else {
                reduced.push_back(monic_pivot);
            }
            ps = normalize_system(std::move(reduced));
        }
#ifndef NDEBUG
        auto cur_index = system_index(ps, nvars, q);
        assert(cur_index < prev_index && "elimination must strictly decrease the system index");
        prev_index = std::move(cur_index);
#endif
    }

    if (stats) {
        stats->mul_count += counter.count;
        stats->td_invocations++;
        if (counter.count > td_mul_bound(nvars, q, l)) stats->td_bound_violations++;
    }
    return res;
}

// ---------------------------------------------------------------------------
// boolean elimination passes

namespace {

struct MfAudit {
    std::uint64_t sum_len = 0;
    std::uint64_t topn_len = 0;
    std::uint64_t sum_terms = 0;
    std::uint64_t topn_terms = 0;
    std::uint64_t cls_weighted_len = 0;
    bool refined = false;  // l > n
    std::uint64_t add_bound = 0;  // saturating
    std::uint64_t additions = 0;
    BoolPoly support;  // union of all occurring monomial sets
    bool audit_monomials = false;

    std::uint64_t len_viol = 0, len_ref_viol = 0, term_viol = 0;
};

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

MfAudit mf_audit_begin(ZddStore& store, const std::vector<BoolPoly>& ps, std::uint32_t nvars,
                       bool audit_monomials) {
    MfAudit a;
    a.audit_monomials = audit_monomials;
    a.support = store.bot();
    std::vector<std::uint64_t> lens, terms;
    std::uint32_t d = 0;
    for (const auto& p : ps) {
        lens.push_back(store.length(p));
        terms.push_back(store.term_count(p));
        a.sum_len += lens.back();
        a.sum_terms += terms.back();
        a.cls_weighted_len += std::uint64_t(store.cls(p)) * lens.back();
        d = std::max(d, store.total_degree(p));
        if (audit_monomials) a.support = store.support_union(a.support, p);
    }
    a.refined = ps.size() > nvars;
    if (a.refined) {
        std::sort(lens.rbegin(), lens.rend());
        std::sort(terms.rbegin(), terms.rend());
        for (std::uint32_t i = 0; i < nvars; ++i) {
            a.topn_len += lens[i];
            a.topn_terms += terms[i];
        }
    }
    // additions bound: l * sum_{i=1..min(d,n)} C(n, i), saturating
    std::uint64_t binom = 1, sum = 0;
    for (std::uint32_t i = 1; i <= std::min(d, nvars); ++i) {
        binom = sat_mul(binom, nvars - i + 1) / i;
        sum = sat_add(sum, binom);
    }
    a.add_bound = sat_mul(ps.size(), sum);
    return a;
}

void mf_track(ZddStore& store, MfAudit& a, BoolPoly p, SolveStats* stats) {
    std::uint64_t len = store.length(p);
    std::uint64_t tc = store.term_count(p);
    if (stats) {
        stats->max_len = std::max(stats->max_len, len);
        stats->max_terms = std::max(stats->max_terms, tc);
    }
    if (len > a.sum_len) a.len_viol++;
    if (a.refined && len > a.topn_len) a.len_ref_viol++;
    if (tc > a.sum_terms + 1) a.term_viol++;
    if (a.audit_monomials) a.support = store.support_union(a.support, p);
}

void mf_audit_end(ZddStore& store, MfAudit& a, SolveStats* stats, std::uint64_t mul_delta) {
    if (!stats) return;
    stats->mf_invocations++;
    stats->mf_len_violations += a.len_viol;
    stats->mf_len_refined_violations += a.len_ref_viol;
    stats->mf_term_violations += a.term_viol;
    if (mul_delta != 0) stats->mf_mul_violations++;
    if (a.additions > a.add_bound) stats->mf_add_violations++;
    if (a.audit_monomials) {
        stats->mf_audited_invocations++;
        if (store.length(a.support) > a.cls_weighted_len + 1) stats->mf_monomial_violations++;
    }
}

// lowest total degree, then fewest terms, then smallest length, then input
// order
std::size_t select_bool_pivot(ZddStore& store, const std::vector<BoolPoly>& polys,
                              const std::vector<std::size_t>& candidates) {
    std::size_t best = candidates[0];
    auto key = [&](std::size_t i) {
        return std::make_tuple(store.total_degree(polys[i]), store.term_count(polys[i]),
                               store.length(polys[i]));
    };
    for (std::size_t i : candidates)
        if (key(i) < key(best)) best = i;
    return best;
}

// A system with no common zero that is visible locally: it contains the
// constant 1, or two members summing to 1 (p and p+1 cannot both vanish).
bool bool_system_dead(ZddStore& store, const std::vector<BoolPoly>& ps) {
    std::unordered_set<std::uint32_t> ids;
    ids.reserve(ps.size() * 2);
    for (const auto& p : ps) {
        if (p.id == ZddStore::kTop) return true;
        ids.insert(p.id);
    }
    for (const auto& p : ps)
        if (ids.count(store.add(p, store.top()).id)) return true;
    return false;
}

}  // namespace

BoolTrisetResult td_triset2(ZddStore& store, std::vector<BoolPoly> ps, std::uint32_t nvars,
                            SolveStats* stats) {
    ps = normalize_bool_system(std::move(ps));
    const std::uint64_t l = ps.size();
    const std::uint64_t mul_before = store.mul_count();

    BoolTrisetResult res;
    while (!ps.empty()) {
        if (bool_system_dead(store, ps)) {
            res.inconsistent = true;
            res.chain.clear();
            break;
        }
        std::uint32_t c = 0;
        for (const auto& p : ps) c = std::max(c, store.cls(p));
        std::vector<std::size_t> cls_idx;
        std::vector<BoolPoly> rest;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (store.cls(ps[i]) == c) cls_idx.push_back(i);
            else rest.push_back(ps[i]);
        }
        std::size_t qi = select_bool_pivot(store, ps, cls_idx);
        auto [pivot_cls, init, tail] = store.split(ps[qi]);
        (void)pivot_cls;

        std::vector<BoolPoly> next;
        if (init.id == ZddStore::kTop) {
            for (std::size_t i : cls_idx) {
                if (i == qi) continue;
                auto [c2, i2, u2] = store.split(ps[i]);
                (void)c2;
                BoolPoly r = store.add(store.mul(i2, tail), u2);
                if (stats) {
                    stats->max_len = std::max(stats->max_len, store.length(r));
                    stats->max_terms = std::max(stats->max_terms, store.term_count(r));
                }
                if (r.id != ZddStore::kBot) next.push_back(r);
            }
            res.chain.push_back(ps[qi]);
        } else {
            BoolPoly monic_pivot = store.add(store.var(c), tail);  // x_c + U
            BoolPoly init_cond = store.add(init, store.top());     // I + 1
            // branch with the merged condition I*U + I + U
            BoolPoly merged = store.add(store.add(store.mul(init, tail), init), tail);
            std::vector<BoolPoly> branch;
            for (std::size_t i = 0; i < ps.size(); ++i)
                if (i != qi) branch.push_back(ps[i]);
            branch.insert(branch.end(), res.chain.begin(), res.chain.end());
            branch.push_back(merged);
            res.branches.push_back(normalize_bool_system(std::move(branch)));
            if (stats) stats->branch_count++;

            for (std::size_t i : cls_idx) {
                if (i == qi) continue;
                auto [c2, i2, u2] = store.split(ps[i]);
                (void)c2;
                BoolPoly r = store.add(store.mul(i2, tail), u2);
                if (stats) {
                    stats->max_len = std::max(stats->max_len, store.length(r));
                    stats->max_terms = std::max(stats->max_terms, store.term_count(r));
                }
                if (r.id != ZddStore::kBot) next.push_back(r);
            }
            if (init_cond.id != ZddStore::kBot) next.push_back(init_cond);
            for (BoolPoly t : {monic_pivot, init_cond, merged})
                if (stats) {
                    stats->max_len = std::max(stats->max_len, store.length(t));
                    stats->max_terms = std::max(stats->max_terms, store.term_count(t));
                }
            res.chain.push_back(monic_pivot);
        }
        next.insert(next.end(), rest.begin(), rest.end());
        ps = normalize_bool_system(std::move(next));
    }

    if (stats) {
        const std::uint64_t delta = store.mul_count() - mul_before;
        stats->mul_count += delta;
        stats->td_invocations++;
        if (delta > td_mul_bound(nvars, 2, l)) stats->td_bound_violations++;
    }
    return res;
}

BoolTrisetResult mf_triset(ZddStore& store, std::vector<BoolPoly> ps, std::uint32_t nvars,
                           SolveStats* stats, bool audit_monomials) {
    ps = normalize_bool_system(std::move(ps));
    BoolTrisetResult res;
    if (bool_system_dead(store, ps)) {
        res.inconsistent = true;
        if (stats) stats->mf_invocations++;
        return res;
    }
    const std::uint64_t mul_before = store.mul_count();
    MfAudit audit = mf_audit_begin(store, ps, nvars, audit_monomials);
    if (stats)
        for (const auto& p : ps) {
            stats->max_len = std::max(stats->max_len, store.length(p));
            stats->max_terms = std::max(stats->max_terms, store.term_count(p));
        }

    while (!ps.empty()) {
        if (bool_system_dead(store, ps)) {
            res.inconsistent = true;
            res.chain.clear();
            break;
        }
        std::uint32_t c = 0;
        for (const auto& p : ps) c = std::max(c, store.cls(p));
        std::vector<BoolPoly> class_polys, lower;
        for (const auto& p : ps) {
            if (store.cls(p) == c) class_polys.push_back(p);
            else lower.push_back(p);
        }

        // split every non-monic class-c polynomial, branching on its initial
        std::vector<BoolPoly> monicized;
        for (std::size_t i = 0; i < class_polys.size(); ++i) {
            auto [cc, init, tail] = store.split(class_polys[i]);
            (void)cc;
            if (init.id == ZddStore::kTop) {
                monicized.push_back(class_polys[i]);
                continue;
            }
            // the branch keeps everything still pending plus the chain
            // extracted so far; dropping the chain would free its leading
            // variables on the branch
            std::vector<BoolPoly> branch(class_polys.begin() + i + 1, class_polys.end());
            branch.insert(branch.end(), lower.begin(), lower.end());
            branch.insert(branch.end(), monicized.begin(), monicized.end());
            branch.insert(branch.end(), res.chain.begin(), res.chain.end());
            branch.push_back(init);
            branch.push_back(tail);
            res.branches.push_back(normalize_bool_system(std::move(branch)));
            if (stats) stats->branch_count++;

            BoolPoly monic = store.add(store.var(c), tail);       // x_c + U
            BoolPoly init_cond = store.add(init, store.top());    // I + 1
            monicized.push_back(monic);
            if (init_cond.id != ZddStore::kBot) lower.push_back(init_cond);
            mf_track(store, audit, init, stats);
            mf_track(store, audit, tail, stats);
            mf_track(store, audit, init_cond, stats);
            mf_track(store, audit, monic, stats);
        }

        std::vector<std::size_t> all_idx(monicized.size());
        for (std::size_t i = 0; i < monicized.size(); ++i) all_idx[i] = i;
        std::size_t qi = select_bool_pivot(store, monicized, all_idx);
        BoolPoly pivot = monicized[qi];
        res.chain.push_back(pivot);
        BoolPoly pivot_tail = store.split(pivot).tail;

        std::vector<BoolPoly> next = lower;
        for (std::size_t i = 0; i < monicized.size(); ++i) {
            if (i == qi) continue;
            BoolPoly other_tail = store.split(monicized[i]).tail;
            BoolPoly r = store.add(other_tail, pivot_tail);  // additions only
            audit.additions++;
            mf_track(store, audit, r, stats);
            if (r.id != ZddStore::kBot) next.push_back(r);
        }
        ps = normalize_bool_system(std::move(next));
    }

    mf_audit_end(store, audit, stats, store.mul_count() - mul_before);
    if (stats) stats->mul_count += store.mul_count() - mul_before;
    return res;
}

// ---------------------------------------------------------------------------
// drivers

namespace {

struct Budget {
    std::uint64_t max_components;
    bool has_deadline = false;
    Clock::time_point deadline;

    static Budget from(const SolveOptions& opts) {
        Budget b;
        b.max_components = opts.max_components ? opts.max_components : default_component_cap();
        if (opts.time_budget_seconds > 0) {
            b.has_deadline = true;
            b.deadline = Clock::now() +
                         std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(opts.time_budget_seconds));
        }
        return b;
    }
    bool deadline_passed() const { return has_deadline && Clock::now() > deadline; }
};

// Pending systems have pairwise disjoint zero sets, so a system seen a
// second time necessarily has an empty zero set and can be skipped.  Keys
// are store-independent, making the explored set (and with it every
// statistic) independent of scheduling.
struct SysKey {
    std::uint64_t a = 0, b = 0;
    bool operator==(const SysKey&) const = default;
};
struct SysKeyHash {
    std::size_t operator()(const SysKey& k) const {
        return static_cast<std::size_t>(k.a ^ (k.b * 0x9e3779b97f4a7c15ULL));
    }
};

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

SysKey bool_system_key(ZddStore& store, const std::vector<BoolPoly>& sys) {
    std::vector<std::uint64_t> fps;
    fps.reserve(sys.size());
    for (const auto& p : sys) {
        std::uint64_t f = store.fingerprint(p);
        f ^= mix64(store.length(p) * 3 + store.term_count(p) * 5 + store.cls(p));
        fps.push_back(f);
    }
    std::sort(fps.begin(), fps.end());
    SysKey key{0x9e3779b97f4a7c15ULL, 0xc2b2ae3d27d4eb4fULL};
    for (std::uint64_t f : fps) {
        key.a = mix64(key.a ^ f);
        key.b = mix64(key.b + (f * 0xff51afd7ed558ccdULL | 1));
    }
    key.a ^= sys.size();
    return key;
}

SysKey generic_system_key(const std::vector<Poly>& sys) {
    std::vector<std::uint64_t> fps;
    fps.reserve(sys.size());
    std::hash<std::string> h;
    for (const auto& p : sys) fps.push_back(mix64(h(p.to_string())));
    std::sort(fps.begin(), fps.end());
    SysKey key{0x9e3779b97f4a7c15ULL, 0xc2b2ae3d27d4eb4fULL};
    for (std::uint64_t f : fps) {
        key.a = mix64(key.a ^ f);
        key.b = mix64(key.b + (f * 0xff51afd7ed558ccdULL | 1));
    }
    key.a ^= sys.size();
    return key;
}

std::vector<std::string> component_sort_key(const TriangularSet& ts) {
    std::vector<std::string> key;
    key.reserve(ts.size());
    for (const auto& p : ts.polys()) key.push_back(p.to_string());
    return key;
}

void sort_components(std::vector<TriangularSet>& components) {
    std::sort(components.begin(), components.end(),
              [](const TriangularSet& a, const TriangularSet& b) {
                  auto ka = std::make_tuple(a.classes(), a.degrees(), component_sort_key(a));
                  auto kb = std::make_tuple(b.classes(), b.degrees(), component_sort_key(b));
                  return ka < kb;
              });
}

#ifndef NDEBUG
std::vector<Rank> rank_signature(const TriangularSet& ts) {
    std::vector<Rank> sig;
    for (const auto& p : ts.polys()) sig.push_back(p.rank());
    return sig;
}

// the triangular-set ordering on rank signatures (ascending classes)
bool sig_lower(const std::vector<Rank>& a, const std::vector<Rank>& b) {
    const std::size_t r = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < r; ++i) {
        if (a[i].cls != b[i].cls) return a[i].cls < b[i].cls;
        if (a[i].deg != b[i].deg) return a[i].deg < b[i].deg;
    }
    return a.size() > b.size();
}
#endif

struct GenericTask {
    std::vector<Poly> polys;
#ifndef NDEBUG
    std::optional<std::vector<Rank>> ancestor;  // improper set this descends from
#endif
};

struct Candidate {
    TriangularSet set;
#ifndef NDEBUG
    std::optional<std::vector<Rank>> ancestor;
#endif
};

// Shared across workers of one elimination phase.
struct GenericPhase {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<GenericTask> queue;
    std::size_t outstanding = 0;
    unsigned waiting = 0;
    bool abort = false;
    std::string abort_reason;
    std::vector<Candidate> candidates;
    SolveStats stats;
    std::uint64_t emitted_total = 0;  // components + candidates across phases
    std::unordered_set<SysKey, SysKeyHash> seen;
};

void generic_worker(GenericPhase& ph, const FieldSpecPtr& spec, std::uint32_t nvars,
                    const Budget& budget) {
    SolveStats local_stats;
    std::deque<GenericTask> local;
    for (;;) {
        if (local.empty()) {
            std::unique_lock lk(ph.mu);
            ++ph.waiting;
            ph.cv.wait(lk, [&] { return !ph.queue.empty() || ph.outstanding == 0 || ph.abort; });
            --ph.waiting;
            if (ph.abort || (ph.queue.empty() && ph.outstanding == 0)) break;
            local.push_back(std::move(ph.queue.back()));
            ph.queue.pop_back();
            continue;
        }
        GenericTask task = std::move(local.back());
        local.pop_back();

        task.polys = normalize_system(std::move(task.polys));
        SysKey key = generic_system_key(task.polys);
        {
            std::unique_lock lk(ph.mu);
            if (!ph.seen.insert(key).second) {
                // a repeated system necessarily has an empty zero set
                --ph.outstanding;
                if (!ph.queue.empty() || ph.outstanding == 0) ph.cv.notify_all();
                continue;
            }
        }

        TdTrisetResult out = td_triset(std::move(task.polys), spec, nvars, &local_stats);

        std::unique_lock lk(ph.mu);
        for (auto& b : out.branches) {
            GenericTask t;
            t.polys = std::move(b);
            ph.queue.push_back(std::move(t));
            ++ph.outstanding;
        }
        if (!out.inconsistent) {
            Candidate cand;
            cand.set = TriangularSet::make(spec, nvars, std::move(out.chain));
#ifndef NDEBUG
            cand.ancestor = task.ancestor;
#endif
            ph.candidates.push_back(std::move(cand));
            if (++ph.emitted_total > budget.max_components) {
                ph.abort = true;
                ph.abort_reason = "component cap exceeded";
            }
        }
        --ph.outstanding;
        if (budget.deadline_passed()) {
            ph.abort = true;
            ph.abort_reason = "time budget exceeded";
        }
        if (!ph.queue.empty() || ph.outstanding == 0 || ph.abort) ph.cv.notify_all();
    }
    std::lock_guard lk(ph.mu);
    ph.stats.merge(local_stats);
    ph.cv.notify_all();
}

}  // namespace

Decomposition tdcs(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                   const SolveOptions& opts) {
    const auto t0 = Clock::now();
    const Budget budget = Budget::from(opts);
    const unsigned threads = std::max(1u, opts.threads);

    Decomposition result;
    GenericPhase ph;
    {
        GenericTask t;
        t.polys = std::move(ps);
        ph.queue.push_back(std::move(t));
        ph.outstanding = 1;
    }
    std::uint64_t emitted_components = 0;

    for (;;) {
        // elimination phase
        if (threads == 1) {
            generic_worker(ph, spec, nvars, budget);
        } else {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < threads; ++i)
                pool.emplace_back([&] { generic_worker(ph, spec, nvars, budget); });
            for (auto& th : pool) th.join();
        }
        if (ph.abort) break;

        // proper-check phase
        std::vector<Candidate> cands = std::move(ph.candidates);
        ph.candidates.clear();
        bool reinjected = false;
        MulCounter proper_ctr;
        for (auto& cand : cands) {
#ifndef NDEBUG
            if (cand.ancestor)
                assert(sig_lower(rank_signature(cand.set), *cand.ancestor) &&
                       "re-solved set must be lower in the triangular-set ordering");
#endif
            std::vector<Poly> residues;
            const std::uint32_t q = spec->q();
            bool proper = true;
            if (!(q == 2 && ts_is_monic(cand.set))) {
                for (const auto& p : cand.set.polys()) {
                    Poly lifted = p.shifted(p.cls(), q - p.deg());
                    Poly r = prem_set(lifted, cand.set, &proper_ctr);
                    if (!r.is_zero()) {
                        proper = false;
                        residues.push_back(std::move(r));
                    }
                }
            }
            if (proper) {
                result.components.push_back(std::move(cand.set));
                ++emitted_components;
            } else {
                GenericTask t;
                t.polys = cand.set.polys();
                t.polys.insert(t.polys.end(), residues.begin(), residues.end());
#ifndef NDEBUG
                t.ancestor = rank_signature(cand.set);
#endif
                ph.queue.push_back(std::move(t));
                ++ph.outstanding;
                reinjected = true;
            }
        }
        ph.stats.mul_count += proper_ctr.count;
        if (!reinjected) break;
    }

    result.stats = ph.stats;
    result.stats.n_components = result.components.size();
    sort_components(result.components);
    result.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (ph.abort) {
        result.complete = false;
        throw ResourceCapError(ph.abort_reason, std::move(result));
    }
    return result;
}

// ---------------------------------------------------------------------------
// boolean driver (tdcs2 / mfcs)

namespace {

struct BoolPhase {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::vector<Poly>> queue;  // store-neutral systems
    std::size_t outstanding = 0;
    unsigned waiting = 0;
    bool abort = false;
    std::string abort_reason;
    std::vector<TriangularSet> components;
    SolveStats stats;
    std::unordered_set<SysKey, SysKeyHash> seen;
};

void bool_worker(BoolPhase& ph, const FieldSpecPtr& spec, std::uint32_t nvars, bool mf,
                 const SolveOptions& opts, const Budget& budget) {
    ZddStore store;
    SolveStats local_stats;
    std::deque<std::vector<BoolPoly>> local;
    std::vector<TriangularSet> local_components;

    auto flush = [&](std::unique_lock<std::mutex>& lk) {
        for (auto& c : local_components) {
            ph.components.push_back(std::move(c));
            if (ph.components.size() > budget.max_components) {
                ph.abort = true;
                ph.abort_reason = "component cap exceeded";
            }
        }
        local_components.clear();
        if (ph.abort) ph.cv.notify_all();
        (void)lk;
    };

    for (;;) {
        if (local.empty()) {
            std::unique_lock lk(ph.mu);
            flush(lk);
            ++ph.waiting;
            ph.cv.wait(lk, [&] { return !ph.queue.empty() || ph.outstanding == 0 || ph.abort; });
            --ph.waiting;
            if (ph.abort || (ph.queue.empty() && ph.outstanding == 0)) break;
            std::vector<Poly> neutral = std::move(ph.queue.back());
            ph.queue.pop_back();
            lk.unlock();
            std::vector<BoolPoly> sys;
            sys.reserve(neutral.size());
            for (const auto& p : neutral) sys.push_back(store.from_poly(p));
            local.push_back(std::move(sys));
            continue;
        }
        std::vector<BoolPoly> sys = normalize_bool_system(std::move(local.back()));
        local.pop_back();

        SysKey key = bool_system_key(store, sys);
        {
            std::unique_lock lk(ph.mu);
            if (!ph.seen.insert(key).second) {
                // a repeated system necessarily has an empty zero set
                --ph.outstanding;
                if (!ph.queue.empty() || ph.outstanding == 0) ph.cv.notify_all();
                continue;
            }
        }
        if (store.cache_size() > 6'000'000) store.clear_caches();

        BoolTrisetResult out = mf ? mf_triset(store, std::move(sys), nvars, &local_stats,
                                              opts.audit_monomials)
                                  : td_triset2(store, std::move(sys), nvars, &local_stats);

        if (!out.inconsistent) {
            std::vector<Poly> chain;
            chain.reserve(out.chain.size());
            for (auto bp : out.chain) chain.push_back(store.to_poly(bp, spec, nvars));
            local_components.push_back(TriangularSet::make(spec, nvars, std::move(chain)));
        }
        for (auto& b : out.branches) local.push_back(std::move(b));

        bool deadline = budget.deadline_passed();
        bool need_share = false;
        {
            std::lock_guard lk(ph.mu);
            ph.outstanding += out.branches.size();
            --ph.outstanding;
            if (deadline && !ph.abort) {
                ph.abort = true;
                ph.abort_reason = "time budget exceeded";
            }
            if (local_components.size() + ph.components.size() > budget.max_components &&
                !ph.abort) {
                ph.abort = true;
                ph.abort_reason = "component cap exceeded";
            }
            if (ph.abort || ph.outstanding == 0 || ph.waiting > 0) ph.cv.notify_all();
            need_share = ph.waiting > 0 && ph.queue.empty() && local.size() > 1;
            if (ph.abort) break;
        }
        if (need_share) {
            // donate the oldest local system to starving workers
            std::vector<BoolPoly> donated = std::move(local.front());
            local.pop_front();
            std::vector<Poly> neutral;
            neutral.reserve(donated.size());
            for (auto bp : donated) neutral.push_back(store.to_poly(bp, spec, nvars));
            std::lock_guard lk(ph.mu);
            ph.queue.push_back(std::move(neutral));
            ph.cv.notify_one();
        }
    }
    std::unique_lock lk(ph.mu);
    flush(lk);
    ph.stats.merge(local_stats);
    ph.cv.notify_all();
}

Decomposition solve_boolean(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                            const SolveOptions& opts, bool mf) {
    if (spec->q() != 2)
        throw std::invalid_argument("algorithm requires q = 2");
    const auto t0 = Clock::now();
    const Budget budget = Budget::from(opts);
    const unsigned threads = std::max(1u, opts.threads);

    BoolPhase ph;
    ph.queue.push_back(std::move(ps));
    ph.outstanding = 1;

    if (threads == 1) {
        bool_worker(ph, spec, nvars, mf, opts, budget);
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back([&] { bool_worker(ph, spec, nvars, mf, opts, budget); });
        for (auto& th : pool) th.join();
    }

    Decomposition result;
    result.components = std::move(ph.components);
    result.stats = ph.stats;
    result.stats.n_components = result.components.size();
    sort_components(result.components);
    result.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (ph.abort) {
        result.complete = false;
        throw ResourceCapError(ph.abort_reason, std::move(result));
    }
    return result;
}

}  // namespace

Decomposition tdcs2(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                    const SolveOptions& opts) {
    return solve_boolean(std::move(ps), spec, nvars, opts, /*mf=*/false);
}

Decomposition mfcs(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                   const SolveOptions& opts) {
    return solve_boolean(std::move(ps), spec, nvars, opts, /*mf=*/true);
}

Decomposition solve(Algorithm alg, std::vector<Poly> ps, const FieldSpecPtr& spec,
                    std::uint32_t nvars, const SolveOptions& opts) {
    switch (alg) {
        case Algorithm::tdcs: return tdcs(std::move(ps), spec, nvars, opts);
        case Algorithm::tdcs2: return tdcs2(std::move(ps), spec, nvars, opts);
        case Algorithm::mfcs: return mfcs(std::move(ps), spec, nvars, opts);
    }
    throw std::invalid_argument("unknown algorithm");
}

// ---------------------------------------------------------------------------

bool BoundReport::all_pass() const {
    for (const auto& c : checks)
        if (c.applicable && !c.pass) return false;
    return true;
}

BoundReport stats_check(const SolveStats& stats, Algorithm alg) {
    BoundReport report;
    auto line = [&](std::string name, bool applicable, bool pass, std::string detail) {
        report.checks.push_back({std::move(name), applicable, pass, std::move(detail)});
    };
    const bool td = alg == Algorithm::tdcs || alg == Algorithm::tdcs2;
    const bool mf = alg == Algorithm::mfcs;
    std::ostringstream td_detail;
    td_detail << stats.td_bound_violations << " violation(s) over " << stats.td_invocations
              << " invocation(s)";
    line("td-multiplication-bound", td, stats.td_bound_violations == 0, td_detail.str());
    std::ostringstream mf_detail;
    mf_detail << "over " << stats.mf_invocations << " invocation(s)";
    line("mf-multiplication-free", mf, stats.mf_mul_violations == 0, mf_detail.str());
    line("mf-length-bound", mf, stats.mf_len_violations == 0,
         std::to_string(stats.mf_len_violations) + " violation(s)");
    line("mf-length-bound-refined", mf, stats.mf_len_refined_violations == 0,
         std::to_string(stats.mf_len_refined_violations) + " violation(s)");
    line("mf-term-bound", mf, stats.mf_term_violations == 0,
         std::to_string(stats.mf_term_violations) + " violation(s)");
    line("mf-distinct-monomial-bound", mf && stats.mf_audited_invocations > 0,
         stats.mf_monomial_violations == 0,
         std::to_string(stats.mf_monomial_violations) + " violation(s) over " +
             std::to_string(stats.mf_audited_invocations) + " audited invocation(s)");
    line("mf-addition-count-bound", mf, stats.mf_add_violations == 0,
         std::to_string(stats.mf_add_violations) + " violation(s)");
    return report;
}

}  // namespace finchar
