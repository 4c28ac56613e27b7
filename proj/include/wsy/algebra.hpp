#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsy/pyramid.hpp"
#include "wsy/rational.hpp"

namespace wsy {

enum class EnumDir { LeftToRight, RightToLeft };

// PBW supermonomial: generator ranks in nondecreasing PBW order, one entry
// per factor (exponent = repetition count). Odd generators appear at most
// once. The empty monomial is the unit.
using Mono = std::vector<uint16_t>;

class Algebra;

// Exact linear combination of PBW supermonomials; the value type of all
// computations. Plain container: the owning Algebra provides the operations.
class Elem {
public:
    std::map<Mono, Rat> terms;

    Elem() = default;
    static Elem scalar(const Rat& c)
    {
        Elem e;
        if (!is_zero(c)) e.terms.emplace(Mono{}, c);
        return e;
    }

    bool is_zero_elem() const { return terms.empty(); }
    size_t size() const { return terms.size(); }

    Elem& operator+=(const Elem& o);
    Elem& operator-=(const Elem& o);
    Elem& operator*=(const Rat& c);
    friend Elem operator+(Elem a, const Elem& b) { return a += b; }
    friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
    friend Elem operator*(Elem a, const Rat& c) { return a *= c; }
    bool operator==(const Elem& o) const { return terms == o.terms; }
};

// Universal enveloping algebra U(gl_{M|N}) attached to a pyramid: boxes,
// elementary-matrix generators, PBW normal form with p-generators before
// m-generators (so pr_chi is a per-monomial read-off), Kazhdan degrees,
// the character chi and the twisted generators e-tilde.
//
// Immutable after construction; all operations are const and safe to call
// concurrently.
class Algebra {
public:
    explicit Algebra(Pyramid pi, EnumDir dir = EnumDir::LeftToRight,
                     std::optional<std::vector<int>> rho_override = std::nullopt);

    const Pyramid& pyramid() const { return pi_; }
    EnumDir dir() const { return dir_; }

    // Boxes. Index set I = {0..M-1} ("+" boxes) then {M..M+N-1} ("-" boxes).
    int boxes() const { return MN_; }
    int box_plus() const { return M_; }
    int box_minus() const { return N_; }
    int row_of(int b) const { return box_row_[b]; }
    int col_of(int b) const { return box_col_[b]; }
    int pa(int b) const { return b >= M_; } // parity of the box
    int box_at(int r, int c) const;         // -1 if absent
    std::string box_name(int b) const;      // "3" or "~2"
    const std::vector<int>& boxes_in_row(int r) const { return row_boxes_[r - 1]; }

    // Generators e_{i,j}, encoded as i*(M+N)+j.
    int gen(int i, int j) const { return i * MN_ + j; }
    int gen_i(int g) const { return g / MN_; }
    int gen_j(int g) const { return g % MN_; }
    int gen_parity(int g) const { return (pa(gen_i(g)) + pa(gen_j(g))) & 1; }
    bool in_p(int g) const { return col_of(gen_i(g)) <= col_of(gen_j(g)); }
    bool in_m(int g) const { return !in_p(g); }
    int kdeg_gen(int g) const { return col_of(gen_j(g)) - col_of(gen_i(g)) + 1; }
    int adh_gen(int g) const { return colx(col_of(gen_j(g))) - colx(col_of(gen_i(g))); }
    int colx(int c) const { return pi_.col_x(c); }

    // PBW rank: p-generators first, then m-generators, lex by (i,j) within.
    int rank_of_gen(int g) const { return rank_of_[g]; }
    int gen_of_rank(int r) const { return gen_of_[r]; }
    int p_rank_count() const { return p_count_; }
    bool rank_in_p(int r) const { return r < p_count_; }
    int rank_parity(int r) const { return rank_par_[r]; }

    // e_pi, h_pi (h as the diagonal vector indexed by box).
    const Elem& e_pi() const { return e_pi_; }
    const std::vector<int>& h_pi_diag() const { return h_diag_; }
    const std::vector<int>& rho() const { return rho_; }

    // Single generators and twisted generators as elements.
    Elem unit() const { return Elem::scalar(1); }
    Elem e(int i, int j) const;
    Elem e_tilde(int i, int j) const;

    // chi on a single generator: (-1)^{pa(i)} iff j sits immediately left of
    // i in the same row.
    int chi_gen(int g) const { return chi_gen_[g]; }

    // --- arithmetic -------------------------------------------------------
    // Straightens an arbitrary word of generators into PBW normal form.
    Elem normal_form(const std::vector<int>& word, const Rat& coeff) const;
    Elem mul(const Elem& a, const Elem& b) const;
    // Supercommutator; non-homogeneous inputs decompose per monomial.
    Elem bracket(const Elem& a, const Elem& b) const;
    int mono_parity(const Mono& m) const;
    int mono_kdeg(const Mono& m) const;
    // Max Kazhdan degree over monomials (0 for scalars, -1 for 0).
    int kdeg(const Elem& x) const;
    bool parity_homogeneous(const Elem& x, int* par = nullptr) const;

    bool in_Up(const Elem& x) const; // every factor in p
    bool in_Um(const Elem& x) const;

    // chi on U(m) (multiplicative over monomial factors); rejects factors
    // outside m.
    Rat chi(const Elem& x) const;
    // pr_chi: p-part left, chi of the m-tail.
    Elem pr_chi(const Elem& x) const;
    // a . y = pr_chi([a,y]) for a in m, y in U(p).
    Elem twisted_action(const Elem& a, const Elem& y) const;

    // Exact rank of the coefficient matrix of a family of elements.
    static int rank(const std::vector<Elem>& vs);

    // Centralizer basis c^{(r)}_{i,j} of Prop 2.9, flattened in (i,j,r) order.
    struct CentralizerElement {
        int i, j, r;
        Elem value;
    };
    std::vector<CentralizerElement> centralizer_basis() const;

    // Textual form: "c * e(i,j)*e(h,k) + ...", barred indices as ~k.
    std::string str(const Elem& x) const;
    Elem parse(const std::string& s) const;

private:
    void straighten(std::map<Mono, Rat>& acc, Mono w, Rat c) const;

    Pyramid pi_;
    EnumDir dir_;
    int M_, N_, MN_;
    std::vector<int> box_row_, box_col_;
    std::vector<std::vector<int>> grid_;      // (r-1)*ell + (c-1) -> box or -1
    std::vector<std::vector<int>> row_boxes_; // per row, in column order
    std::vector<int> rank_of_, gen_of_, rank_par_;
    std::vector<int8_t> rank_odd_;
    int p_count_;
    std::vector<int> chi_gen_;
    std::vector<int> rho_;
    std::vector<int> h_diag_;
    Elem e_pi_;
    // bracket table, indexed by rank pair: list of (rank, +-1)
    struct BrkTerm {
        uint16_t rank;
        int8_t coeff;
    };
    std::vector<std::vector<BrkTerm>> brk_;
};

} // namespace wsy
