#pragma once

#include "wsy/algebra.hpp"

namespace wsy {

// Element of A otimes B for two algebra contexts, with the super sign rule
// (a ox b)(c ox d) = (-1)^{|b||c|} ac ox bd. Used as the codomain of the
// psi_R / psi_L factorization maps.
class TensorElem {
public:
    std::map<std::pair<Mono, Mono>, Rat> terms;

    TensorElem() = default;
    static TensorElem scalar(const Rat& c)
    {
        TensorElem t;
        if (!is_zero(c)) t.terms.emplace(std::make_pair(Mono{}, Mono{}), c);
        return t;
    }

    bool is_zero_elem() const { return terms.empty(); }

    TensorElem& operator+=(const TensorElem& o)
    {
        for (const auto& [m, c] : o.terms) {
            auto it = terms.find(m);
            if (it == terms.end()) {
                terms.emplace(m, c);
            } else {
                it->second += c;
                if (is_zero(it->second)) terms.erase(it);
            }
        }
        return *this;
    }
    TensorElem& operator-=(const TensorElem& o)
    {
        TensorElem neg = o;
        neg *= Rat(-1);
        return *this += neg;
    }
    TensorElem& operator*=(const Rat& c)
    {
        if (is_zero(c)) {
            terms.clear();
            return *this;
        }
        for (auto& [m, v] : terms) v *= c;
        return *this;
    }
    bool operator==(const TensorElem& o) const { return terms == o.terms; }
};

class TensorAlgebra {
public:
    TensorAlgebra(const Algebra& left, const Algebra& right) : L_(left), R_(right) {}

    const Algebra& left() const { return L_; }
    const Algebra& right() const { return R_; }

    TensorElem make(const Elem& a, const Elem& b) const
    {
        TensorElem out;
        for (const auto& [m1, c1] : a.terms)
            for (const auto& [m2, c2] : b.terms) out.terms.emplace(std::make_pair(m1, m2), c1 * c2);
        return out;
    }

    TensorElem mul(const TensorElem& x, const TensorElem& y) const
    {
        TensorElem out;
        for (const auto& [mx, cx] : x.terms)
            for (const auto& [my, cy] : y.terms) {
                Rat c = cx * cy;
                if (L_.mono_parity(my.first) & R_.mono_parity(mx.second)) c = -c;
                Elem l, r;
                l.terms.emplace(mx.first, Rat(1));
                r.terms.emplace(mx.second, Rat(1));
                Elem l2, r2;
                l2.terms.emplace(my.first, Rat(1));
                r2.terms.emplace(my.second, Rat(1));
                Elem lp = L_.mul(l, l2), rp = R_.mul(r, r2);
                for (const auto& [ml, cl] : lp.terms)
                    for (const auto& [mr, cr] : rp.terms) {
                        auto key = std::make_pair(ml, mr);
                        Rat cc = c * cl * cr;
                        auto it = out.terms.find(key);
                        if (it == out.terms.end()) {
                            out.terms.emplace(std::move(key), std::move(cc));
                        } else {
                            it->second += cc;
                            if (is_zero(it->second)) out.terms.erase(it);
                        }
                    }
            }
        return out;
    }

    TensorElem bracket(const TensorElem& x, const TensorElem& y) const
    {
        TensorElem out = mul(x, y);
        for (const auto& [mx, cx] : x.terms)
            for (const auto& [my, cy] : y.terms) {
                int px = (L_.mono_parity(mx.first) + R_.mono_parity(mx.second)) & 1;
                int py = (L_.mono_parity(my.first) + R_.mono_parity(my.second)) & 1;
                TensorElem a, b;
                a.terms.emplace(mx, cx);
                b.terms.emplace(my, cy);
                TensorElem ba = mul(b, a);
                ba *= Rat((px & py) ? 1 : -1);
                out += ba;
            }
        return out;
    }

    // Exact rank of a family, flattening monomial pairs to columns.
    static int rank(const std::vector<TensorElem>& vs)
    {
        std::map<std::pair<Mono, Mono>, TensorElem, std::greater<std::pair<Mono, Mono>>> pivots;
        int rk = 0;
        for (const TensorElem& v0 : vs) {
            TensorElem v = v0;
            while (!v.terms.empty()) {
                const auto lead = v.terms.rbegin()->first;
                auto it = pivots.find(lead);
                if (it == pivots.end()) {
                    Rat inv = 1 / v.terms.rbegin()->second;
                    v *= inv;
                    pivots.emplace(lead, std::move(v));
                    ++rk;
                    break;
                }
                Rat c = v.terms.rbegin()->second;
                TensorElem sub = it->second;
                sub *= c;
                v -= sub;
            }
        }
        return rk;
    }

    std::string str(const TensorElem& x) const;

private:
    const Algebra& L_;
    const Algebra& R_;
};

} // namespace wsy
