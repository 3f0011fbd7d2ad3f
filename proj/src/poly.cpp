#include "finchar/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace finchar {

std::uint32_t Monomial::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& f : factors) d += f.exp;
    return d;
}

std::uint32_t Monomial::degree_in(std::uint32_t var) const {
    for (const auto& f : factors)
        if (f.var == var) return f.exp;
    return 0;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
    std::uint32_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    // lex on exponent vectors read from x_n down to x_1; factors are sorted
    // by variable descending
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const VarPow& fa = a.factors[i];
        const VarPow& fb = b.factors[j];
        if (fa.var != fb.var) return fa.var > fb.var ? 1 : -1;
        if (fa.exp != fb.exp) return fa.exp > fb.exp ? 1 : -1;
        ++i;
        ++j;
    }
    if (i < a.factors.size()) return 1;
    if (j < b.factors.size()) return -1;
    return 0;
}

namespace {

void require_compatible(const Poly& a, const Poly& b) {
    if (a.nvars() != b.nvars() || !a.spec() || !b.spec() || !(*a.spec() == *b.spec()))
        throw std::invalid_argument("polynomials from different rings");
}

// Product of canonical monomials with x^q = x applied, so the result is
// canonical again.
Monomial mul_monomials(const Monomial& a, const Monomial& b, std::uint32_t q) {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].var > b.factors[j].var)) {
            out.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].var > a.factors[i].var) {
            out.factors.push_back(b.factors[j++]);
        } else {
            std::uint32_t e = std::uint32_t(a.factors[i].exp) + b.factors[j].exp;
            e = (e - 1) % (q - 1) + 1;
            out.factors.push_back({a.factors[i].var, static_cast<std::uint16_t>(e)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Poly Poly::zero(FieldSpecPtr spec, std::uint32_t nvars) {
    Poly p;
    p.spec_ = std::move(spec);
    p.nvars_ = nvars;
    return p;
}

Poly Poly::constant(FieldSpecPtr spec, std::uint32_t nvars, FieldElement value) {
    Poly p = zero(std::move(spec), nvars);
    if (value.code != 0) p.terms_.push_back({Monomial{}, value});
    return p;
}

Poly Poly::variable(FieldSpecPtr spec, std::uint32_t nvars, std::uint32_t var) {
    if (var < 1 || var > nvars) throw std::invalid_argument("variable index out of range");
    Poly p = zero(spec, nvars);
    p.terms_.push_back({Monomial{{{static_cast<std::uint16_t>(var), 1}}}, spec->one()});
    return p;
}

Poly Poly::monomial(FieldSpecPtr spec, std::uint32_t nvars, Monomial m, FieldElement coef) {
    return from_terms(std::move(spec), nvars, {{std::move(m), coef}});
}

Poly Poly::from_terms(FieldSpecPtr spec, std::uint32_t nvars, std::vector<Term> raw) {
    const std::uint32_t q = spec->q();
    for (auto& t : raw) {
        Monomial canon;
        std::vector<VarPow> fs = t.mono.factors;
        std::sort(fs.begin(), fs.end(), [](const VarPow& a, const VarPow& b) { return a.var > b.var; });
        for (std::size_t i = 0; i < fs.size();) {
            if (fs[i].var < 1 || fs[i].var > nvars)
                throw std::invalid_argument("variable index out of range");
            std::uint64_t e = 0;
            std::size_t j = i;
            while (j < fs.size() && fs[j].var == fs[i].var) e += fs[j++].exp;
            if (e > 0) {
                // x^q = x
                std::uint16_t r = static_cast<std::uint16_t>((e - 1) % (q - 1) + 1);
                canon.factors.push_back({fs[i].var, r});
            }
            i = j;
        }
        t.mono = std::move(canon);
    }
    std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) {
        return compare_monomials(a.mono, b.mono) > 0;
    });
    Poly p = zero(spec, nvars);
    for (auto& t : raw) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef = spec->add(p.terms_.back().coef, t.coef);
            if (p.terms_.back().coef.code == 0) p.terms_.pop_back();
        } else if (t.coef.code != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

FieldElement Poly::constant_value() const {
    if (terms_.empty()) return {0};
    if (cls() != 0) throw std::invalid_argument("not a constant polynomial");
    return terms_.back().coef;
}

bool Poly::is_one() const {
    return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef.code == 1;
}

std::uint32_t Poly::cls() const {
    std::uint32_t c = 0;
    for (const auto& t : terms_) c = std::max(c, t.mono.top_var());
    return c;
}

std::uint32_t Poly::deg() const {
    std::uint32_t c = cls();
    return c == 0 ? 0 : degree_in(c);
}

std::uint32_t Poly::degree_in(std::uint32_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree_in(var));
    return d;
}

std::uint32_t Poly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

Poly Poly::coeff_of(std::uint32_t var, std::uint32_t e) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.mono.degree_in(var) != e) continue;
        Term nt = t;
        std::erase_if(nt.mono.factors, [var](const VarPow& f) { return f.var == var; });
        out.push_back(std::move(nt));
    }
    return from_terms(spec_, nvars_, std::move(out));
}

Poly Poly::initial() const {
    std::uint32_t c = cls();
    if (c == 0) throw std::invalid_argument("initial of a constant polynomial");
    return coeff_of(c, deg());
}

Poly Poly::tail() const {
    std::uint32_t c = cls();
    if (c == 0) throw std::invalid_argument("tail of a constant polynomial");
    std::uint32_t d = deg();
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (t.mono.degree_in(c) != d) out.push_back(t);
    return from_terms(spec_, nvars_, std::move(out));
}

std::uint64_t Poly::length() const {
    std::uint64_t len = 0;
    for (const auto& t : terms_) {
        std::uint32_t d = t.mono.total_degree();
        len += d == 0 ? 1 : d;
    }
    return len;
}

Poly Poly::operator+(const Poly& other) const {
    require_compatible(*this, other);
    Poly out = zero(spec_, nvars_);
    out.terms_.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
        int cmp;
        if (i == terms_.size()) cmp = -1;
        else if (j == other.terms_.size()) cmp = 1;
        else cmp = compare_monomials(terms_[i].mono, other.terms_[j].mono);
        if (cmp > 0) {
            out.terms_.push_back(terms_[i++]);
        } else if (cmp < 0) {
            out.terms_.push_back(other.terms_[j++]);
        } else {
            FieldElement c = spec_->add(terms_[i].coef, other.terms_[j].coef);
            if (c.code != 0) out.terms_.push_back({terms_[i].mono, c});
            ++i;
            ++j;
        }
    }
    return out;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& t : out.terms_) t.coef = spec_->neg(t.coef);
    return out;
}

Poly Poly::operator-(const Poly& other) const { return *this + (-other); }

Poly Poly::scaled(FieldElement c) const {
    if (c.code == 0) return zero(spec_, nvars_);
    if (c.code == 1) return *this;
    Poly out = *this;
    for (auto& t : out.terms_) t.coef = spec_->mul(t.coef, c);
    return out;
}

Poly Poly::shifted(std::uint32_t var, std::uint32_t e) const {
    if (e == 0) return *this;
    const Monomial shift{{{static_cast<std::uint16_t>(var), static_cast<std::uint16_t>(e)}}};
    std::vector<Term> out = terms_;
    for (auto& t : out) t.mono = mul_monomials(t.mono, shift, spec_->q());
    return from_terms(spec_, nvars_, std::move(out));
}

FieldElement Poly::eval(std::span<const FieldElement> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
    FieldElement acc = spec_->zero();
    for (const auto& t : terms_) {
        FieldElement v = t.coef;
        for (const auto& f : t.mono.factors) v = spec_->mul(v, spec_->pow(point[f.var - 1], f.exp));
        acc = spec_->add(acc, v);
    }
    return acc;
}

Poly Poly::eval_partial(const std::vector<std::optional<FieldElement>>& assignment) const {
    if (assignment.size() != nvars_) throw std::invalid_argument("assignment dimension mismatch");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term nt;
        nt.coef = t.coef;
        for (const auto& f : t.mono.factors) {
            if (assignment[f.var - 1]) {
                nt.coef = spec_->mul(nt.coef, spec_->pow(*assignment[f.var - 1], f.exp));
            } else {
                nt.mono.factors.push_back(f);
            }
        }
        if (nt.coef.code != 0) out.push_back(std::move(nt));
    }
    return from_terms(spec_, nvars_, std::move(out));
}

Poly mul(const Poly& a, const Poly& b, MulCounter* counter) {
    require_compatible(a, b);
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.spec(), a.nvars());
    if (a.is_constant()) return b.scaled(a.constant_value());
    if (b.is_constant()) return a.scaled(b.constant_value());
    if (counter) ++counter->count;
    std::vector<Term> out;
    out.reserve(a.terms().size() * b.terms().size());
    const std::uint32_t q = a.spec()->q();
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            out.push_back({mul_monomials(ta.mono, tb.mono, q), a.spec()->mul(ta.coef, tb.coef)});
    return Poly::from_terms(a.spec(), a.nvars(), std::move(out));
}

Poly pow_repeated(const Poly& a, std::uint32_t e, MulCounter* counter) {
    Poly acc = Poly::constant(a.spec(), a.nvars(), a.spec()->one());
    for (std::uint32_t i = 0; i < e; ++i) acc = mul(acc, a, counter);
    return acc;
}

RankOrder compare_rank(const Poly& a, const Poly& b) {
    Rank ra = a.rank(), rb = b.rank();
    if (ra.cls != rb.cls) return ra.cls < rb.cls ? RankOrder::lower : RankOrder::higher;
    if (ra.deg != rb.deg) return ra.deg < rb.deg ? RankOrder::lower : RankOrder::higher;
    return RankOrder::same;
}

bool is_reduced(const Poly& q, const Poly& p) {
    std::uint32_t c = p.cls();
    if (c == 0) throw std::invalid_argument("reduction against a constant polynomial");
    return q.degree_in(c) < p.deg();
}

Poly prem(const Poly& q, const Poly& p, MulCounter* counter, PremRecord* record) {
    require_compatible(q, p);
    const std::uint32_t c = p.cls();
    if (c == 0) throw std::invalid_argument("pseudo-division by a constant-class polynomial");
    const std::uint32_t d = p.deg();
    const Poly init = p.initial();
    const bool monic = init.is_one();

    Poly r = q;
    Poly quot = Poly::zero(q.spec(), q.nvars());
    std::uint32_t steps = 0;
    while (!r.is_zero()) {
        std::uint32_t e = r.degree_in(c);
        if (e < d) break;
        Poly coef = r.coeff_of(c, e);
        // r <- init*r - coef*x_c^(e-d)*p, which cancels the x_c^e part
        if (!monic) {
            r = mul(init, r, counter);
            if (record) quot = mul(init, quot, nullptr);
            ++steps;
        }
        Poly t = mul(coef, p, counter).shifted(c, e - d);
        r = r - t;
        if (record) quot = quot + coef.shifted(c, e - d);
    }
    if (record) {
        record->scale_power = monic ? 0 : steps;
        record->quotient = quot;
    }
    return r;
}

// ---------------------------------------------------------------------------
// text grammar

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    const bool ext = spec_->k() > 1;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        const bool coef_one = t.coef.code == 1;
        if (!coef_one || t.mono.is_one()) {
            if (ext && t.coef.code >= spec_->p()) os << "g" << t.coef.code;
            else os << t.coef.code;
            if (!t.mono.is_one()) os << "*";
        }
        bool first_factor = true;
        for (auto it = t.mono.factors.rbegin(); it != t.mono.factors.rend(); ++it) {
            if (!first_factor) os << "*";
            first_factor = false;
            os << "x" << it->var;
            if (it->exp > 1) os << "^" << it->exp;
        }
    }
    return os.str();
}

namespace {

struct PolyLexer {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    std::uint64_t number() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("expected number in polynomial at offset " + std::to_string(i));
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > 1'000'000'000) throw std::invalid_argument("number too large in polynomial");
            ++i;
        }
        return v;
    }
};

}  // namespace

Poly parse_poly(const std::string& text, FieldSpecPtr spec, std::uint32_t nvars) {
    PolyLexer lx{text};
    std::vector<Term> terms;
    bool negate = false;
    if (lx.peek() == '-') {
        negate = true;
        ++lx.i;
    } else if (lx.peek() == '+') {
        ++lx.i;
    }
    while (!lx.eof()) {
        Term t;
        t.coef = spec->one();
        bool saw_factor = false;
        for (;;) {
            char c = lx.peek();
            if (c == 'x') {
                ++lx.i;
                std::uint64_t var = lx.number();
                std::uint64_t e = 1;
                if (lx.peek() == '^') {
                    ++lx.i;
                    e = lx.number();
                }
                if (var < 1 || var > nvars)
                    throw std::invalid_argument("variable x" + std::to_string(var) + " out of range");
                if (e > 0) {
                    std::uint16_t r = static_cast<std::uint16_t>((e - 1) % (spec->q() - 1) + 1);
                    t.mono.factors.push_back({static_cast<std::uint16_t>(var), r});
                }
                saw_factor = true;
            } else if (c == 'g') {
                ++lx.i;
                std::uint64_t code = lx.number();
                if (code >= spec->q()) throw std::invalid_argument("coefficient code out of range");
                t.coef = spec->mul(t.coef, {static_cast<std::uint16_t>(code)});
                saw_factor = true;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::uint64_t v = lx.number();
                t.coef = spec->mul(t.coef, {static_cast<std::uint16_t>(v % spec->p())});
                saw_factor = true;
            } else {
                break;
            }
            if (lx.peek() == '*') {
                ++lx.i;
                continue;
            }
            break;
        }
        if (!saw_factor) throw std::invalid_argument("empty term in polynomial");
        if (negate) t.coef = spec->neg(t.coef);
        terms.push_back(std::move(t));
        if (lx.eof()) break;
        char c = lx.peek();
        if (c == '+') negate = false;
        else if (c == '-') negate = true;
        else throw std::invalid_argument(std::string("unexpected character '") + c + "' in polynomial");
        ++lx.i;
    }
    return Poly::from_terms(std::move(spec), nvars, std::move(terms));
}

}  // namespace finchar
