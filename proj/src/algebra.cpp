#include "wsy/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace wsy {

Elem& Elem::operator+=(const Elem& o)
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

Elem& Elem::operator-=(const Elem& o)
{
    for (const auto& [m, c] : o.terms) {
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, -c);
        } else {
            it->second -= c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }
    return *this;
}

Elem& Elem::operator*=(const Rat& c)
{
    if (is_zero(c)) {
        terms.clear();
        return *this;
    }
    for (auto& [m, v] : terms) v *= c;
    return *this;
}

Algebra::Algebra(Pyramid pi, EnumDir dir, std::optional<std::vector<int>> rho_override)
    : pi_(std::move(pi)), dir_(dir)
{
    M_ = pi_.box_count_plus();
    N_ = pi_.box_count_minus();
    MN_ = M_ + N_;
    int H = pi_.height(), L = pi_.ell();

    // Enumerate boxes of each sign down columns, left to right (or right to
    // left for the Case-L convention of the main-theorem machinery).
    box_row_.assign(MN_, 0);
    box_col_.assign(MN_, 0);
    grid_.assign(H, std::vector<int>(L, -1));
    row_boxes_.assign(H, {});
    int next_plus = 0, next_minus = M_;
    for (int ci = 0; ci < L; ++ci) {
        int c = dir_ == EnumDir::LeftToRight ? ci + 1 : L - ci;
        for (int pass = 0; pass < 2; ++pass) {
            bool want_minus = pass == 1;
            for (int r = 1; r <= H; ++r) {
                if (!pi_.has_box(r, c) || pi_.row(r).minus != want_minus) continue;
                int b = want_minus ? next_minus++ : next_plus++;
                box_row_[b] = r;
                box_col_[b] = c;
                grid_[r - 1][c - 1] = b;
            }
        }
    }
    for (int r = 1; r <= H; ++r)
        for (int c = 1; c <= L; ++c)
            if (grid_[r - 1][c - 1] >= 0) row_boxes_[r - 1].push_back(grid_[r - 1][c - 1]);

    rho_ = rho_override ? *rho_override : pi_.rho();
    if ((int)rho_.size() != L) throw std::invalid_argument("rho override has wrong length");

    h_diag_.assign(MN_, 0);
    for (int b = 0; b < MN_; ++b) h_diag_[b] = -colx(col_of(b));

    // PBW order: p-generators first (lex by (i,j)), then m-generators.
    int G = MN_ * MN_;
    rank_of_.assign(G, -1);
    gen_of_.clear();
    for (int pass = 0; pass < 2; ++pass)
        for (int g = 0; g < G; ++g)
            if (in_p(g) == (pass == 0)) {
                rank_of_[g] = (int)gen_of_.size();
                gen_of_.push_back(g);
            }
    p_count_ = 0;
    for (int g = 0; g < G; ++g) p_count_ += in_p(g);
    rank_par_.assign(G, 0);
    rank_odd_.assign(G, 0);
    for (int r = 0; r < G; ++r) {
        rank_par_[r] = gen_parity(gen_of_[r]);
        rank_odd_[r] = (int8_t)rank_par_[r];
    }

    // chi(e_{i,j}) = (-1)^{pa(i)} when (j,i) is a horizontally adjacent pair.
    chi_gen_.assign(G, 0);
    for (int i = 0; i < MN_; ++i)
        for (int j = 0; j < MN_; ++j)
            if (row_of(i) == row_of(j) && col_of(i) == col_of(j) + 1)
                chi_gen_[gen(i, j)] = pa(i) ? -1 : 1;

    // e_pi = sum over adjacent pairs.
    for (int b = 0; b < MN_; ++b) {
        int r = row_of(b), c = col_of(b);
        if (c < L && grid_[r - 1][c] >= 0) {
            int right = grid_[r - 1][c];
            e_pi_ += e(b, right);
        }
    }

    // Structure constants [e_{ij}, e_{hk}] = d_{jh} e_{ik} - sign d_{ki} e_{hj},
    // tabulated by PBW rank pair.
    brk_.assign((size_t)G * G, {});
    for (int r1 = 0; r1 < G; ++r1)
        for (int r2 = 0; r2 < G; ++r2) {
            int g1 = gen_of_[r1], g2 = gen_of_[r2];
            int i = gen_i(g1), j = gen_j(g1), h = gen_i(g2), k = gen_j(g2);
            auto& out = brk_[(size_t)r1 * G + r2];
            int sign = (gen_parity(g1) & gen_parity(g2)) ? -1 : 1;
            if (j == h) out.push_back({(uint16_t)rank_of_[gen(i, k)], 1});
            if (k == i) out.push_back({(uint16_t)rank_of_[gen(h, j)], (int8_t)-sign});
        }
}

int Algebra::box_at(int r, int c) const
{
    if (r < 1 || r > pi_.height() || c < 1 || c > pi_.ell()) return -1;
    return grid_[r - 1][c - 1];
}

std::string Algebra::box_name(int b) const
{
    return b < M_ ? std::to_string(b + 1) : "~" + std::to_string(b - M_ + 1);
}

Elem Algebra::e(int i, int j) const
{
    Elem x;
    x.terms.emplace(Mono{(uint16_t)rank_of_[gen(i, j)]}, Rat(1));
    return x;
}

Elem Algebra::e_tilde(int i, int j) const
{
    int sgn = ((col_of(j) - col_of(i)) & 1) ? -1 : 1;
    Elem x = e(i, j);
    if (i == j) {
        int shift = (pa(i) ? -1 : 1) * rho_[col_of(i) - 1];
        x += Elem::scalar(Rat(shift));
    }
    return x * Rat(sgn);
}

void Algebra::straighten(std::map<Mono, Rat>& acc, Mono w, Rat c) const
{
    // Worklist rewriting: swap descents (adding bracket terms), kill odd
    // squares. Strictly decreases (length, inversions), so terminates.
    int G = MN_ * MN_;
    std::vector<std::pair<Mono, Rat>> work;
    work.emplace_back(std::move(w), std::move(c));
    while (!work.empty()) {
        auto [u, cu] = std::move(work.back());
        work.pop_back();
        bool rewritten = false;
        for (size_t k = 0; k + 1 < u.size(); ++k) {
            uint16_t a = u[k], b = u[k + 1];
            if (a == b && rank_odd_[a]) { // odd square: the term vanishes
                rewritten = true;
                break;
            }
            if (a <= b) continue;
            // descent: u = x a b y  ->  sign x b a y + x [a,b] y
            Mono v = u;
            std::swap(v[k], v[k + 1]);
            Rat sw = cu;
            if (rank_odd_[a] && rank_odd_[b]) sw = -sw;
            work.emplace_back(std::move(v), std::move(sw));
            for (const auto& t : brk_[(size_t)a * G + b]) {
                Mono z;
                z.reserve(u.size() - 1);
                z.insert(z.end(), u.begin(), u.begin() + k);
                z.push_back(t.rank);
                z.insert(z.end(), u.begin() + k + 2, u.end());
                work.emplace_back(std::move(z), cu * t.coeff);
            }
            rewritten = true;
            break;
        }
        if (!rewritten) {
            if (is_zero(cu)) continue;
            auto it = acc.find(u);
            if (it == acc.end()) {
                acc.emplace(std::move(u), std::move(cu));
            } else {
                it->second += cu;
                if (is_zero(it->second)) acc.erase(it);
            }
        }
    }
}

Elem Algebra::normal_form(const std::vector<int>& word, const Rat& coeff) const
{
    Mono w;
    w.reserve(word.size());
    for (int g : word) {
        if (g < 0 || g >= MN_ * MN_) throw std::invalid_argument("generator outside this algebra");
        w.push_back((uint16_t)rank_of_[g]);
    }
    Elem out;
    straighten(out.terms, std::move(w), coeff);
    return out;
}

Elem Algebra::mul(const Elem& a, const Elem& b) const
{
    Elem out;
    for (const auto& [m1, c1] : a.terms)
        for (const auto& [m2, c2] : b.terms) {
            Mono w;
            w.reserve(m1.size() + m2.size());
            w.insert(w.end(), m1.begin(), m1.end());
            w.insert(w.end(), m2.begin(), m2.end());
            straighten(out.terms, std::move(w), c1 * c2);
        }
    return out;
}

int Algebra::mono_parity(const Mono& m) const
{
    int p = 0;
    for (uint16_t r : m) p ^= rank_odd_[r];
    return p;
}

int Algebra::mono_kdeg(const Mono& m) const
{
    int d = 0;
    for (uint16_t r : m) d += kdeg_gen(gen_of_[r]);
    return d;
}

Elem Algebra::bracket(const Elem& a, const Elem& b) const
{
    // [x,y] = xy - (-1)^{|x||y|} yx, per homogeneous monomial pair.
    Elem out;
    for (const auto& [m1, c1] : a.terms)
        for (const auto& [m2, c2] : b.terms) {
            Rat c = c1 * c2;
            Mono w;
            w.reserve(m1.size() + m2.size());
            w.insert(w.end(), m1.begin(), m1.end());
            w.insert(w.end(), m2.begin(), m2.end());
            Mono v;
            v.reserve(m1.size() + m2.size());
            v.insert(v.end(), m2.begin(), m2.end());
            v.insert(v.end(), m1.begin(), m1.end());
            Rat cv = (mono_parity(m1) & mono_parity(m2)) ? c : -c;
            straighten(out.terms, std::move(w), c);
            straighten(out.terms, std::move(v), cv);
        }
    return out;
}

int Algebra::kdeg(const Elem& x) const
{
    int d = -1;
    for (const auto& [m, c] : x.terms) d = std::max(d, mono_kdeg(m));
    return d;
}

bool Algebra::parity_homogeneous(const Elem& x, int* par) const
{
    int p = -1;
    for (const auto& [m, c] : x.terms) {
        int q = mono_parity(m);
        if (p < 0)
            p = q;
        else if (p != q)
            return false;
    }
    if (par) *par = p < 0 ? 0 : p;
    return true;
}

bool Algebra::in_Up(const Elem& x) const
{
    for (const auto& [m, c] : x.terms)
        for (uint16_t r : m)
            if (!rank_in_p(r)) return false;
    return true;
}

bool Algebra::in_Um(const Elem& x) const
{
    for (const auto& [m, c] : x.terms)
        for (uint16_t r : m)
            if (rank_in_p(r)) return false;
    return true;
}

Rat Algebra::chi(const Elem& x) const
{
    if (!in_Um(x)) throw std::invalid_argument("chi: element not supported in U(m)");
    Rat out(0);
    for (const auto& [m, c] : x.terms) {
        int v = 1;
        for (uint16_t r : m) {
            v *= chi_gen_[gen_of_[r]];
            if (v == 0) break;
        }
        if (v) out += c * v;
    }
    return out;
}

Elem Algebra::pr_chi(const Elem& x) const
{
    // Monomials are normal-ordered with the m-tail on the right; project it
    // through chi factor by factor.
    Elem out;
    for (const auto& [m, c] : x.terms) {
        size_t cut = m.size();
        while (cut > 0 && !rank_in_p(m[cut - 1])) --cut;
        int v = 1;
        for (size_t t = cut; t < m.size() && v; ++t) v *= chi_gen_[gen_of_[m[t]]];
        if (!v) continue;
        Mono head(m.begin(), m.begin() + cut);
        Rat cc = c * v;
        auto it = out.terms.find(head);
        if (it == out.terms.end()) {
            out.terms.emplace(std::move(head), std::move(cc));
        } else {
            it->second += cc;
            if (is_zero(it->second)) out.terms.erase(it);
        }
    }
    return out;
}

Elem Algebra::twisted_action(const Elem& a, const Elem& y) const
{
    if (!in_Um(a)) throw std::invalid_argument("twisted_action: a must lie in m");
    if (!in_Up(y)) throw std::invalid_argument("twisted_action: y must lie in U(p)");
    return pr_chi(bracket(a, y));
}

int Algebra::rank(const std::vector<Elem>& vs)
{
    // Row reduction with the largest monomial of each row as pivot.
    std::map<Mono, Elem, std::greater<Mono>> pivots;
    int rk = 0;
    for (const Elem& v0 : vs) {
        Elem v = v0;
        while (!v.terms.empty()) {
            const Mono lead = v.terms.rbegin()->first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                Rat inv = 1 / v.terms.rbegin()->second;
                v *= inv;
                pivots.emplace(lead, std::move(v));
                ++rk;
                break;
            }
            Rat c = v.terms.rbegin()->second;
            Elem sub = it->second;
            sub *= c;
            v -= sub;
        }
    }
    return rk;
}

std::vector<Algebra::CentralizerElement> Algebra::centralizer_basis() const
{
    Triple tr = triple_from_pyramid(pi_);
    std::vector<CentralizerElement> out;
    int H = pi_.height();
    for (int i = 1; i <= H; ++i)
        for (int j = 1; j <= H; ++j) {
            int pmin = pi_.row(std::min(i, j)).length;
            int s = tr.sigma.at(i, j);
            for (int r = s + 1; r <= s + pmin; ++r) {
                Elem v;
                for (int h : boxes_in_row(i))
                    for (int k : boxes_in_row(j))
                        if (col_of(k) - col_of(h) == r - 1) v += e(h, k);
                out.push_back({i, j, r, std::move(v)});
            }
        }
    return out;
}

std::string Algebra::str(const Elem& x) const
{
    if (x.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : x.terms) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        for (size_t t = 0; t < m.size(); ++t) {
            int g = gen_of_[m[t]];
            os << (t == 0 ? " * " : "*");
            os << "e(" << box_name(gen_i(g)) << "," << box_name(gen_j(g)) << ")";
        }
    }
    return os.str();
}

Elem Algebra::parse(const std::string& s) const
{
    auto parse_box = [&](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("bad box index");
        if (t[0] == '~') return M_ + std::stoi(t.substr(1)) - 1;
        return std::stoi(t) - 1;
    };
    Elem out;
    std::string str = s;
    // split on top-level " + " and " - "
    std::vector<std::pair<std::string, int>> terms;
    size_t pos = 0;
    int sign = 1;
    while (pos < str.size()) {
        size_t plus = str.find(" + ", pos), minus = str.find(" - ", pos);
        size_t cut = std::min(plus, minus);
        terms.emplace_back(str.substr(pos, cut == std::string::npos ? cut : cut - pos), sign);
        if (cut == std::string::npos) break;
        sign = cut == plus ? 1 : -1;
        pos = cut + 3;
    }
    for (auto& [term, sg] : terms) {
        std::string t;
        for (char ch : term)
            if (!isspace((unsigned char)ch)) t.push_back(ch);
        if (t.empty()) throw std::invalid_argument("empty term");
        size_t star = t.find('*');
        std::string coeff = t.substr(0, star);
        Rat c = rat_parse(coeff) * sg;
        std::vector<int> word;
        while (star != std::string::npos) {
            size_t open = t.find("e(", star);
            if (open == std::string::npos) throw std::invalid_argument("expected e(i,j)");
            size_t comma = t.find(',', open), close = t.find(')', open);
            int i = parse_box(t.substr(open + 2, comma - open - 2));
            int j = parse_box(t.substr(comma + 1, close - comma - 1));
            word.push_back(gen(i, j));
            star = t.find('*', close);
        }
        out += normal_form(word, c);
    }
    return out;
}

} // namespace wsy
