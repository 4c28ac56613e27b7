#include "wsy/verify.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <thread>

namespace wsy {

namespace {

using Params = std::vector<std::pair<std::string, int>>;

Rat sgn(int bit) { return Rat(bit & 1 ? -1 : 1); }

// Residual printer: the five largest Kazhdan-degree terms localize sign bugs
// fastest.
std::string residual_str(const Algebra& A, const Elem& r)
{
    if (r.is_zero_elem()) return "";
    std::vector<std::pair<int, const Mono*>> by_deg;
    for (const auto& [m, c] : r.terms) by_deg.emplace_back(A.mono_kdeg(m), &m);
    std::stable_sort(by_deg.begin(), by_deg.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    Elem top;
    size_t keep = std::min<size_t>(5, by_deg.size());
    for (size_t t = 0; t < keep; ++t) top.terms.emplace(*by_deg[t].second, r.terms.at(*by_deg[t].second));
    std::ostringstream os;
    os << A.str(top);
    if (by_deg.size() > keep) os << " + [" << by_deg.size() - keep << " more terms]";
    return os.str();
}

struct TaskRunner {
    std::vector<std::pair<Check, std::function<Elem()>>> tasks;
    const Algebra* A = nullptr;

    void add(std::string id, Params p, std::function<Elem()> fn)
    {
        Check c;
        c.id = std::move(id);
        c.params = std::move(p);
        tasks.emplace_back(std::move(c), std::move(fn));
    }

    std::vector<Check> run(int jobs)
    {
        std::vector<Check> out(tasks.size());
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t t = next.fetch_add(1);
                if (t >= tasks.size()) return;
                Check c = tasks[t].first;
                auto start = std::chrono::steady_clock::now();
                try {
                    Elem resid = tasks[t].second();
                    if (resid.is_zero_elem()) {
                        c.status = Check::St::Pass;
                    } else {
                        c.status = Check::St::Fail;
                        c.residual = residual_str(*A, resid);
                    }
                } catch (const std::exception& e) {
                    c.status = Check::St::Fail;
                    c.residual = std::string("error: ") + e.what();
                }
                c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                           .count();
                out[t] = std::move(c);
            }
        };
        jobs = std::max(1, jobs);
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        return out;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Relation families. Residual = LHS - RHS of the defining relation, with all
// generators realized in U(p) via the closed forms.

static Elem rel_p702(const GenSource& G, int a, int i, int j, int r)
{
    const Algebra& A = G.algebra();
    Elem acc;
    for (int p = 1; p <= G.mu(a); ++p)
        for (int t = 0; t <= r; ++t) acc += A.mul(G.D(a, i, p, t), G.Dp(a, p, j, r - t));
    if (r == 0 && i == j) acc -= A.unit();
    return acc;
}

static Elem rel_p703(const GenSource& G, int a, int b, int i, int j, int h, int k, int r, int s)
{
    const Algebra& A = G.algebra();
    Elem resid = A.bracket(G.D(a, i, j, r), G.D(b, h, k, s));
    if (a == b) {
        Elem rhs;
        for (int t = 0; t <= std::min(r, s) - 1; ++t) {
            rhs += A.mul(G.D(a, h, j, t), G.D(a, i, k, r + s - 1 - t));
            rhs -= A.mul(G.D(a, h, j, r + s - 1 - t), G.D(a, i, k, t));
        }
        rhs *= sgn(G.par(a, i) * G.par(a, j) + G.par(a, i) * G.par(a, h) + G.par(a, j) * G.par(a, h));
        resid -= rhs;
    }
    return resid;
}

static Elem rel_p704(const GenSource& G, int a, int b, int i, int j, int h, int k, int r, int s)
{
    const Algebra& A = G.algebra();
    Elem resid = A.bracket(G.D(a, i, j, r), G.E(b, h, k, s));
    if (a == b && h == j) {
        Elem t1;
        for (int p = 1; p <= G.mu(a); ++p)
            for (int t = 0; t <= r - 1; ++t) t1 += A.mul(G.D(a, i, p, t), G.E(b, p, k, r + s - 1 - t));
        t1 *= sgn(G.par(a, h) * G.par(a, j));
        resid -= t1;
    }
    if (a == b + 1) {
        Elem t2;
        for (int t = 0; t <= r - 1; ++t) t2 += A.mul(G.D(a, i, k, t), G.E(b, h, j, r + s - 1 - t));
        t2 *= sgn(G.par(b, h) * G.par(a, k) + G.par(b, h) * G.par(a, j) + G.par(a, j) * G.par(a, k));
        resid += t2;
    }
    return resid;
}

static Elem rel_p705(const GenSource& G, int a, int b, int i, int j, int h, int k, int r, int s)
{
    const Algebra& A = G.algebra();
    Elem resid = A.bracket(G.D(a, i, j, r), G.F(b, h, k, s));
    // The first branch carries delta_{i,k} (restored; the display drops it).
    if (a == b && i == k) {
        Elem t1;
        for (int p = 1; p <= G.mu(a); ++p)
            for (int t = 0; t <= r - 1; ++t) t1 += A.mul(G.F(b, h, p, r + s - 1 - t), G.D(a, p, j, t));
        t1 *= sgn(1 + G.par(a, i) * G.par(a, j) + G.par(a + 1, h) * G.par(a, i) +
                  G.par(a + 1, h) * G.par(a, j));
        resid -= t1;
    }
    if (a == b + 1) {
        Elem t2;
        for (int t = 0; t <= r - 1; ++t) t2 += A.mul(G.F(b, i, k, r + s - 1 - t), G.D(a, h, j, t));
        t2 *= sgn(G.par(a, h) * G.par(b, k) + G.par(a, h) * G.par(a, j) + G.par(a, j) * G.par(b, k));
        resid -= t2;
    }
    return resid;
}

static Elem rel_p706(const GenSource& G, int a, int b, int i, int j, int h, int k, int r, int s)
{
    const Algebra& A = G.algebra();
    Elem resid = A.bracket(G.E(a, i, j, r), G.F(b, h, k, s));
    if (a == b) {
        Elem rhs;
        for (int t = 0; t <= r + s - 1; ++t) rhs += A.mul(G.Dp(a, i, k, r + s - 1 - t), G.D(a + 1, h, j, t));
        rhs *= sgn(1 + G.par(a + 1, h) * G.par(a, k) + G.par(a + 1, j) * G.par(a, k) +
                   G.par(a + 1, h) * G.par(a + 1, j));
        resid -= rhs;
    }
    return resid;
}

static Elem rel_p707(const GenSource& G, int a, int i, int j, int h, int k, int r, int s)
{
    const Algebra& A = G.algebra();
    Elem resid = A.bracket(G.E(a, i, j, r), G.E(a, h, k, s));
    Elem rhs;
    int lo = G.smu(a, a + 1) + 1;
    for (int t = lo; t <= s - 1; ++t) rhs += A.mul(G.E(a, i, k, r + s - 1 - t), G.E(a, h, j, t));
    for (int t = lo; t <= r - 1; ++t) rhs -= A.mul(G.E(a, i, k, r + s - 1 - t), G.E(a, h, j, t));
    rhs *= sgn(G.par(a, h) * G.par(a + 1, j) + G.par(a + 1, j) * G.par(a + 1, k) +
               G.par(a, h) * G.par(a + 1, k));
    return resid - rhs;
}

static Elem rel_p708(const GenSource& G, int a, int i, int j, int h, int k, int r, int s)
{
    const Algebra& A = G.algebra();
    Elem resid = A.bracket(G.F(a, i, j, r), G.F(a, h, k, s));
    Elem rhs;
    int lo = G.smu(a + 1, a) + 1;
    for (int t = lo; t <= r - 1; ++t) rhs += A.mul(G.F(a, i, k, r + s - 1 - t), G.F(a, h, j, t));
    for (int t = lo; t <= s - 1; ++t) rhs -= A.mul(G.F(a, i, k, r + s - 1 - t), G.F(a, h, j, t));
    rhs *= sgn(G.par(a + 1, h) * G.par(a, j) + G.par(a, j) * G.par(a, k) +
               G.par(a + 1, h) * G.par(a, k));
    return resid - rhs;
}

static Elem rel_p709(const GenSource& G, int a, int i, int j, int h, int k, int r, int s)
{
    const Algebra& A = G.algebra();
    Elem resid = A.bracket(G.E(a, i, j, r + 1), G.E(a + 1, h, k, s));
    resid -= A.bracket(G.E(a, i, j, r), G.E(a + 1, h, k, s + 1));
    if (h == j) {
        Elem rhs;
        for (int q = 1; q <= G.mu(a + 1); ++q) rhs += A.mul(G.E(a, i, q, r), G.E(a + 1, q, k, s));
        rhs *= sgn(G.par(a + 1, j) * G.par(a + 1, h));
        resid -= rhs;
    }
    return resid;
}

static Elem rel_p710(const GenSource& G, int a, int i, int j, int h, int k, int r, int s)
{
    const Algebra& A = G.algebra();
    Elem resid = A.bracket(G.F(a, i, j, r + 1), G.F(a + 1, h, k, s));
    resid -= A.bracket(G.F(a, i, j, r), G.F(a + 1, h, k, s + 1));
    if (i == k) {
        Elem rhs;
        for (int q = 1; q <= G.mu(a + 1); ++q) rhs += A.mul(G.F(a + 1, h, q, s), G.F(a, q, j, r));
        rhs *= sgn(1 + G.par(a + 1, i) * (G.par(a, j) + G.par(a + 2, h)) + G.par(a, j) * G.par(a + 2, h));
        resid -= rhs;
    }
    return resid;
}

static Elem rel_p713(const GenSource& G, int a, int b, int i, int j, int h, int k, int f, int g,
                     int r, int s, int t)
{
    const Algebra& A = G.algebra();
    Elem inner = A.bracket(G.E(a, h, k, s), G.E(b, f, g, t));
    Elem resid = A.bracket(G.E(a, i, j, r), inner);
    Elem inner2 = A.bracket(G.E(a, h, k, r), G.E(b, f, g, t));
    resid += A.bracket(G.E(a, i, j, s), inner2);
    return resid;
}

static Elem rel_p714(const GenSource& G, int a, int b, int i, int j, int h, int k, int f, int g,
                     int r, int s, int t)
{
    const Algebra& A = G.algebra();
    Elem inner = A.bracket(G.F(a, h, k, s), G.F(b, f, g, t));
    Elem resid = A.bracket(G.F(a, i, j, r), inner);
    Elem inner2 = A.bracket(G.F(a, h, k, r), G.F(b, f, g, t));
    resid += A.bracket(G.F(a, i, j, s), inner2);
    return resid;
}

static Elem rel_p715(const GenSource& G, int a, int i, int f1, int f2, int j, int h, int g1, int g2,
                     int k, int r, int s)
{
    const Algebra& A = G.algebra();
    int s1 = G.smu(a, a + 1) + 1;
    Elem left = A.bracket(G.E(a - 1, i, f1, r), G.E(a, f2, j, s1));
    Elem right = A.bracket(G.E(a, h, g1, s1), G.E(a + 1, g2, k, s));
    return A.bracket(left, right);
}

static Elem rel_p716(const GenSource& G, int a, int i, int f1, int f2, int j, int h, int g1, int g2,
                     int k, int r, int s)
{
    const Algebra& A = G.algebra();
    int s1 = G.smu(a + 1, a) + 1;
    Elem left = A.bracket(G.F(a - 1, i, f1, r), G.F(a, f2, j, s1));
    Elem right = A.bracket(G.F(a, h, g1, s1), G.F(a + 1, g2, k, s));
    return A.bracket(left, right);
}

VerificationReport verify_all_relations(const GenSource& G, const json& pyjson, int bound, int jobs,
                                        bool drinfeld_ids, const std::vector<int>& families)
{
    const Algebra& A = G.algebra();
    int z = G.z();
    auto id = [&](int n) {
        std::ostringstream os;
        os << (drinfeld_ids ? "d4" : "p7") << (n < 10 ? "0" : "") << n;
        return os.str();
    };
    auto wanted = [&](int fam) {
        return families.empty() || std::count(families.begin(), families.end(), fam) > 0;
    };
    G.warm(bound + 1);
    TaskRunner tr;
    tr.A = &A;
    std::vector<int> family_count(17, 0);
    auto add = [&](int fam, Params p, std::function<Elem()> fn) {
        if (!wanted(fam)) return;
        ++family_count[fam];
        tr.add(id(fam), std::move(p), std::move(fn));
    };

    for (int a = 1; a <= z; ++a)
        for (int i = 1; i <= G.mu(a); ++i)
            for (int j = 1; j <= G.mu(a); ++j) {
                // p701: both constant terms.
                add(1, {{"a", a}, {"i", i}, {"j", j}}, [&G, a, i, j] {
                    Elem want = i == j ? G.algebra().unit() : Elem();
                    return (G.D(a, i, j, 0) - want) + (G.Dp(a, i, j, 0) - want);
                });
                for (int r = 0; r <= bound; ++r)
                    add(2, {{"a", a}, {"i", i}, {"j", j}, {"r", r}},
                        [&G, a, i, j, r] { return rel_p702(G, a, i, j, r); });
            }

    for (int a = 1; a <= z; ++a)
        for (int b = 1; b <= z; ++b)
            for (int i = 1; i <= G.mu(a); ++i)
                for (int j = 1; j <= G.mu(a); ++j)
                    for (int h = 1; h <= G.mu(b); ++h)
                        for (int k = 1; k <= G.mu(b); ++k)
                            for (int r = 0; r <= bound; ++r)
                                for (int s = 0; r + s <= bound; ++s)
                                    add(3,
                                        {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                        [&G, a, b, i, j, h, k, r, s] {
                                            return rel_p703(G, a, b, i, j, h, k, r, s);
                                        });

    for (int a = 1; a <= z; ++a)
        for (int b = 1; b + 1 <= z; ++b)
            for (int i = 1; i <= G.mu(a); ++i)
                for (int j = 1; j <= G.mu(a); ++j)
                    for (int h = 1; h <= G.mu(b); ++h)
                        for (int k = 1; k <= G.mu(b + 1); ++k)
                            for (int r = 0; r <= bound; ++r) {
                                for (int s = G.smu(b, b + 1) + 1; r + s <= bound; ++s)
                                    add(4,
                                        {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                        [&G, a, b, i, j, h, k, r, s] {
                                            return rel_p704(G, a, b, i, j, h, k, r, s);
                                        });
                                for (int s = G.smu(b + 1, b) + 1; r + s <= bound; ++s)
                                    add(5,
                                        {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", k}, {"k", h}, {"r", r}, {"s", s}},
                                        [&G, a, b, i, j, h, k, r, s] {
                                            // F_{b;h,k}: first index in block b+1
                                            return rel_p705(G, a, b, i, j, k, h, r, s);
                                        });
                            }

    for (int a = 1; a + 1 <= z; ++a)
        for (int b = 1; b + 1 <= z; ++b)
            for (int i = 1; i <= G.mu(a); ++i)
                for (int j = 1; j <= G.mu(a + 1); ++j)
                    for (int h = 1; h <= G.mu(b + 1); ++h)
                        for (int k = 1; k <= G.mu(b); ++k)
                            for (int r = G.smu(a, a + 1) + 1; r <= bound; ++r)
                                for (int s = G.smu(b + 1, b) + 1; r + s <= bound; ++s)
                                    add(6,
                                        {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                        [&G, a, b, i, j, h, k, r, s] {
                                            return rel_p706(G, a, b, i, j, h, k, r, s);
                                        });

    for (int a = 1; a + 1 <= z; ++a)
        for (int i = 1; i <= G.mu(a); ++i)
            for (int h = 1; h <= G.mu(a); ++h)
                for (int j = 1; j <= G.mu(a + 1); ++j)
                    for (int k = 1; k <= G.mu(a + 1); ++k)
                        for (int r = G.smu(a, a + 1) + 1; r <= bound; ++r)
                            for (int s = G.smu(a, a + 1) + 1; r + s <= bound; ++s) {
                                add(7, {{"a", a}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                    [&G, a, i, j, h, k, r, s] { return rel_p707(G, a, i, j, h, k, r, s); });
                            }
    for (int a = 1; a + 1 <= z; ++a)
        for (int i = 1; i <= G.mu(a + 1); ++i)
            for (int h = 1; h <= G.mu(a + 1); ++h)
                for (int j = 1; j <= G.mu(a); ++j)
                    for (int k = 1; k <= G.mu(a); ++k)
                        for (int r = G.smu(a + 1, a) + 1; r <= bound; ++r)
                            for (int s = G.smu(a + 1, a) + 1; r + s <= bound; ++s)
                                add(8, {{"a", a}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                    [&G, a, i, j, h, k, r, s] { return rel_p708(G, a, i, j, h, k, r, s); });

    for (int a = 1; a + 2 <= z; ++a)
        for (int i = 1; i <= G.mu(a); ++i)
            for (int j = 1; j <= G.mu(a + 1); ++j)
                for (int h = 1; h <= G.mu(a + 1); ++h)
                    for (int k = 1; k <= G.mu(a + 2); ++k)
                        for (int r = G.smu(a, a + 1) + 1; r <= bound; ++r)
                            for (int s = G.smu(a + 1, a + 2) + 1; r + s <= bound; ++s)
                                add(9, {{"a", a}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                    [&G, a, i, j, h, k, r, s] { return rel_p709(G, a, i, j, h, k, r, s); });

    for (int a = 1; a + 2 <= z; ++a)
        for (int i = 1; i <= G.mu(a + 1); ++i)
            for (int j = 1; j <= G.mu(a); ++j)
                for (int h = 1; h <= G.mu(a + 2); ++h)
                    for (int k = 1; k <= G.mu(a + 1); ++k)
                        for (int r = G.smu(a + 1, a) + 1; r <= bound; ++r)
                            for (int s = G.smu(a + 2, a + 1) + 1; r + s <= bound; ++s)
                                add(10, {{"a", a}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                    [&G, a, i, j, h, k, r, s] { return rel_p710(G, a, i, j, h, k, r, s); });

    // p711/p712: vanishing brackets, a < b.
    for (int a = 1; a + 1 <= z; ++a)
        for (int b = a + 1; b + 1 <= z; ++b)
            for (int i = 1; i <= G.mu(a); ++i)
                for (int j = 1; j <= G.mu(a + 1); ++j)
                    for (int h = 1; h <= G.mu(b); ++h)
                        for (int k = 1; k <= G.mu(b + 1); ++k) {
                            if (b == a + 1 && h == j) continue;
                            for (int r = G.smu(a, a + 1) + 1; r <= bound; ++r)
                                for (int s = G.smu(b, b + 1) + 1; r + s <= bound; ++s) {
                                    add(11, {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                        [&G, a, b, i, j, h, k, r, s] {
                                            return G.algebra().bracket(G.E(a, i, j, r), G.E(b, h, k, s));
                                        });
                                }
                        }
    for (int a = 1; a + 1 <= z; ++a)
        for (int b = a + 1; b + 1 <= z; ++b)
            for (int i = 1; i <= G.mu(a + 1); ++i)
                for (int j = 1; j <= G.mu(a); ++j)
                    for (int h = 1; h <= G.mu(b + 1); ++h)
                        for (int k = 1; k <= G.mu(b); ++k) {
                            if (b == a + 1 && i == k) continue;
                            for (int r = G.smu(a + 1, a) + 1; r <= bound; ++r)
                                for (int s = G.smu(b + 1, b) + 1; r + s <= bound; ++s)
                                    add(12, {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                        [&G, a, b, i, j, h, k, r, s] {
                                            return G.algebra().bracket(G.F(a, i, j, r), G.F(b, h, k, s));
                                        });
                        }

    // p713/p714: Serre cubics, b != a.
    for (int a = 1; a + 1 <= z; ++a)
        for (int b = 1; b + 1 <= z; ++b) {
            if (b == a) continue;
            for (int i = 1; i <= G.mu(a); ++i)
                for (int j = 1; j <= G.mu(a + 1); ++j)
                    for (int h = 1; h <= G.mu(a); ++h)
                        for (int k = 1; k <= G.mu(a + 1); ++k)
                            for (int f = 1; f <= G.mu(b); ++f)
                                for (int g = 1; g <= G.mu(b + 1); ++g)
                                    for (int r = G.smu(a, a + 1) + 1; r <= bound; ++r)
                                        for (int s = G.smu(a, a + 1) + 1; r + s <= bound; ++s)
                                            for (int t = G.smu(b, b + 1) + 1; r + s + t <= bound; ++t)
                                                add(13,
                                                    {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"f", f}, {"g", g}, {"r", r}, {"s", s}, {"t", t}},
                                                    [&G, a, b, i, j, h, k, f, g, r, s, t] {
                                                        return rel_p713(G, a, b, i, j, h, k, f, g, r, s, t);
                                                    });
            for (int i = 1; i <= G.mu(a + 1); ++i)
                for (int j = 1; j <= G.mu(a); ++j)
                    for (int h = 1; h <= G.mu(a + 1); ++h)
                        for (int k = 1; k <= G.mu(a); ++k)
                            for (int f = 1; f <= G.mu(b + 1); ++f)
                                for (int g = 1; g <= G.mu(b); ++g)
                                    for (int r = G.smu(a + 1, a) + 1; r <= bound; ++r)
                                        for (int s = G.smu(a + 1, a) + 1; r + s <= bound; ++s)
                                            for (int t = G.smu(b + 1, b) + 1; r + s + t <= bound; ++t)
                                                add(14,
                                                    {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"f", f}, {"g", g}, {"r", r}, {"s", s}, {"t", t}},
                                                    [&G, a, b, i, j, h, k, f, g, r, s, t] {
                                                        return rel_p714(G, a, b, i, j, h, k, f, g, r, s, t);
                                                    });
        }

    // p715/p716: quartic Serre families (z >= 4, parity change).
    if (z >= 4) {
        for (int a = 2; a + 2 <= z; ++a) {
            for (int i = 1; i <= G.mu(a - 1); ++i)
                for (int f1 = 1; f1 <= G.mu(a); ++f1)
                    for (int f2 = 1; f2 <= G.mu(a); ++f2)
                        for (int j = 1; j <= G.mu(a + 1); ++j)
                            for (int h = 1; h <= G.mu(a); ++h) {
                                if (((G.par(a, h) + G.par(a + 1, j)) & 1) != 1) continue;
                                for (int g1 = 1; g1 <= G.mu(a + 1); ++g1)
                                    for (int g2 = 1; g2 <= G.mu(a + 1); ++g2)
                                        for (int k = 1; k <= G.mu(a + 2); ++k)
                                            for (int r = G.smu(a - 1, a) + 1; r <= bound; ++r)
                                                for (int s = G.smu(a + 1, a + 2) + 1; r + s <= bound; ++s)
                                                    add(15,
                                                        {{"a", a}, {"i", i}, {"f1", f1}, {"f2", f2}, {"j", j}, {"h", h}, {"g1", g1}, {"g2", g2}, {"k", k}, {"r", r}, {"s", s}},
                                                        [&G, a, i, f1, f2, j, h, g1, g2, k, r, s] {
                                                            return rel_p715(G, a, i, f1, f2, j, h, g1, g2, k, r, s);
                                                        });
                            }
            for (int i = 1; i <= G.mu(a); ++i)
                for (int f1 = 1; f1 <= G.mu(a - 1); ++f1)
                    for (int f2 = 1; f2 <= G.mu(a + 1); ++f2)
                        for (int j = 1; j <= G.mu(a); ++j)
                            for (int h = 1; h <= G.mu(a + 1); ++h) {
                                if (((G.par(a, j) + G.par(a + 1, h)) & 1) != 1) continue;
                                for (int g1 = 1; g1 <= G.mu(a); ++g1)
                                    for (int g2 = 1; g2 <= G.mu(a + 2); ++g2)
                                        for (int k = 1; k <= G.mu(a + 1); ++k)
                                            for (int r = G.smu(a, a - 1) + 1; r <= bound; ++r)
                                                for (int s = G.smu(a + 2, a + 1) + 1; r + s <= bound; ++s)
                                                    add(16,
                                                        {{"a", a}, {"i", i}, {"f1", f1}, {"f2", f2}, {"j", j}, {"h", h}, {"g1", g1}, {"g2", g2}, {"k", k}, {"r", r}, {"s", s}},
                                                        [&G, a, i, f1, f2, j, h, g1, g2, k, r, s] {
                                                            return rel_p716(G, a, i, f1, f2, j, h, g1, g2, k, r, s);
                                                        });
                            }
        }
    }

    VerificationReport rep;
    rep.pyramid = pyjson;
    rep.bound = bound;
    rep.checks = tr.run(jobs);
    // Family coverage: a family with no instances is reported as skipped.
    for (int fam = 1; fam <= 16; ++fam)
        if (wanted(fam) && family_count[fam] == 0)
            rep.checks.push_back(Check::skip(id(fam), "no instances at this shape/bound"));
    rep.sort_checks();
    return rep;
}

VerificationReport relations_suite(std::shared_ptr<const Algebra> A, const CompositionShape& mu,
                                   int bound, int jobs)
{
    Triple tr = triple_from_pyramid(A->pyramid());
    int maxshift = 0;
    for (int i = 1; i <= tr.sigma.size(); ++i)
        for (int j = 1; j <= tr.sigma.size(); ++j) maxshift = std::max(maxshift, tr.sigma.at(i, j));
    int rmax = bound + 2 + maxshift;
    json pyjson = pyramid_to_json(A->pyramid());

    std::vector<int> ones(A->pyramid().height(), 1);
    GaussGenerators drin(A, CompositionShape(ones), rmax);
    VerificationReport rep = verify_all_relations(drin, pyjson, bound, jobs, true);

    GaussGenerators para(A, mu, rmax);
    rep.append(verify_all_relations(para, pyjson, bound, jobs, false));
    rep.bound = bound;
    return rep;
}

VerificationReport verify_m_invariance(const GaussGenerators& G, int r_bound, int jobs)
{
    const Algebra& A = G.algebra();
    VerificationReport rep;
    rep.pyramid = pyramid_to_json(A.pyramid());
    rep.bound = r_bound;

    std::vector<int> m_basis;
    for (int i = 0; i < A.boxes(); ++i)
        for (int j = 0; j < A.boxes(); ++j)
            if (A.in_m(A.gen(i, j))) m_basis.push_back(A.gen(i, j));
    if (m_basis.empty()) {
        rep.checks.push_back(Check::skip("minv", "m = 0 (zero nilpotent), vacuous"));
        return rep;
    }

    G.warm(r_bound);
    TaskRunner tr;
    tr.A = &A;
    auto add_for = [&](char fam, int a, int i, int j, int r, std::function<Elem()> gen) {
        for (size_t t = 0; t < m_basis.size(); ++t) {
            int g = m_basis[t];
            tr.add(std::string("minv-") + fam,
                   {{"a", a}, {"i", i}, {"j", j}, {"r", r}, {"m", (int)t}}, [&A, g, gen] {
                       Elem x = A.e(A.gen_i(g), A.gen_j(g));
                       return A.twisted_action(x, gen());
                   });
        }
    };
    for (int a = 1; a <= G.z(); ++a)
        for (int i = 1; i <= G.mu(a); ++i)
            for (int j = 1; j <= G.mu(a); ++j)
                for (int r = 1; r <= r_bound; ++r)
                    add_for('D', a, i, j, r, [&G, a, i, j, r] { return G.D(a, i, j, r); });
    for (int b = 1; b + 1 <= G.z(); ++b)
        for (int h = 1; h <= G.mu(b); ++h)
            for (int k = 1; k <= G.mu(b + 1); ++k) {
                for (int r = G.smu(b, b + 1) + 1; r <= r_bound; ++r)
                    add_for('E', b, h, k, r, [&G, b, h, k, r] { return G.E(b, h, k, r); });
                for (int r = G.smu(b + 1, b) + 1; r <= r_bound; ++r)
                    add_for('F', b, k, h, r, [&G, b, h, k, r] { return G.F(b, k, h, r); });
            }
    rep.checks = tr.run(jobs);
    rep.sort_checks();
    return rep;
}

PbwAlphabet PbwAlphabet::build(const GaussGenerators& G)
{
    PbwAlphabet out;
    for (int a = 1; a <= G.z(); ++a)
        for (int i = 1; i <= G.mu(a); ++i)
            for (int j = 1; j <= G.mu(a); ++j)
                for (int r = 1; r <= G.pmu(a); ++r)
                    out.entries.push_back(
                        {'D', a, a, i, j, r, r, G.parity_D(a, i, j), G.D(a, i, j, r)});
    for (int a = 1; a <= G.z(); ++a)
        for (int b = a + 1; b <= G.z(); ++b)
            for (int i = 1; i <= G.mu(a); ++i)
                for (int j = 1; j <= G.mu(b); ++j) {
                    for (int r = G.smu(a, b) + 1; r <= G.smu(a, b) + G.pmu(a); ++r)
                        out.entries.push_back({'E', a, b, i, j, r, r,
                                               (G.par(a, i) + G.par(b, j)) & 1,
                                               G.E_root(a, b, i, j, r)});
                    for (int r = G.smu(b, a) + 1; r <= G.smu(b, a) + G.pmu(a); ++r)
                        out.entries.push_back({'F', a, b, j, i, r, r,
                                               (G.par(b, j) + G.par(a, i)) & 1,
                                               G.F_root(b, a, j, i, r)});
                }
    return out;
}

std::vector<std::pair<int, Elem>> PbwAlphabet::monomials(const Algebra& A, int d) const
{
    std::vector<std::pair<int, Elem>> out;
    std::function<void(size_t, int, const Elem&)> rec = [&](size_t at, int deg, const Elem& acc) {
        out.emplace_back(deg, acc);
        for (size_t t = at; t < entries.size(); ++t) {
            const auto& e = entries[t];
            if (deg + e.degree > d) continue;
            Elem next = A.mul(acc, e.value);
            // odd generators carry exponent at most 1
            rec(e.parity ? t + 1 : t, deg + e.degree, next);
        }
    };
    rec(0, 0, A.unit());
    return out;
}

std::vector<unsigned long long> symmetric_dim_table(const Algebra& A, int d_max)
{
    // dim F_d S(g^e): supermonomial count in the centralizer basis, graded by
    // Kazhdan degree (deg c^{(r)} = r), odd generators squaring to zero.
    std::vector<unsigned long long> cnt(d_max + 1, 0);
    cnt[0] = 1;
    for (const auto& c : A.centralizer_basis()) {
        int parity = (A.pyramid().row(c.i).minus + A.pyramid().row(c.j).minus) & 1;
        std::vector<unsigned long long> next = cnt;
        if (parity) {
            for (int d = c.r; d <= d_max; ++d) next[d] += cnt[d - c.r];
        } else {
            for (int d = c.r; d <= d_max; ++d) next[d] += next[d - c.r];
        }
        cnt = std::move(next);
    }
    for (int d = 1; d <= d_max; ++d) cnt[d] += cnt[d - 1]; // cumulative: degree <= d
    return cnt;
}

VerificationReport pbw_rank_check(const GaussGenerators& G, int d_max)
{
    const Algebra& A = G.algebra();
    VerificationReport rep;
    rep.pyramid = pyramid_to_json(A.pyramid());
    rep.bound = d_max;

    PbwAlphabet alpha = PbwAlphabet::build(G);
    auto mons = alpha.monomials(A, d_max);
    std::stable_sort(mons.begin(), mons.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    auto dims = symmetric_dim_table(A, d_max);

    // Incremental elimination, recording the rank after each degree class.
    std::map<Mono, Elem, std::greater<Mono>> pivots;
    int rk = 0;
    size_t at = 0;
    for (int d = 0; d <= d_max; ++d) {
        while (at < mons.size() && mons[at].first <= d) {
            Elem v = mons[at].second;
            ++at;
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
                Elem sub = it->second;
                sub *= v.terms.rbegin()->second;
                v -= sub;
            }
        }
        Check c;
        c.id = "pbw-rank";
        c.params = {{"d", d}, {"rank", rk}, {"dim", (int)dims[d]}};
        if ((unsigned long long)rk == dims[d]) {
            c.status = Check::St::Pass;
        } else {
            c.status = Check::St::Fail;
            std::ostringstream os;
            os << "rank " << rk << " != dim F_d S(g^e) = " << dims[d];
            c.residual = os.str();
        }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

Check lemma92_check(const TBuilder& tb, int kase, int x, int y, int i, int j, int r_max)
{
    const Algebra& A = tb.algebra();
    int H = A.pyramid().height();
    Params params = {{"case", kase}, {"x", x}, {"y", y}, {"i", i}, {"j", j}};
    bool ok_pattern = false;
    switch (kase) {
    case 1: ok_pattern = x < i && i <= y && y < j && j <= H; break;
    case 2: ok_pattern = x < j && j <= y && y < i && i <= H; break;
    case 3: ok_pattern = x < y && y < i && i <= H && y < j && j <= H; break;
    case 4: ok_pattern = x < i && i <= y && x < j && j <= y; break;
    default: throw std::invalid_argument("lemma92: case must be 1..4");
    }
    if (x >= y) ok_pattern = false;
    if (!ok_pattern) {
        Check c = Check::skip("lemma92", "inapplicable index pattern");
        c.params = std::move(params);
        return c;
    }
    auto series = [&](int a, int b, int thr) {
        GenSeries s(r_max + 1);
        for (int r = 0; r <= r_max; ++r) s[r] = tb.t(a, b, thr, r);
        return s;
    };
    Check c;
    c.id = "lemma92";
    c.params = std::move(params);
    c.status = Check::St::Pass;
    for (int r = 0; r <= r_max; ++r) {
        Elem resid;
        if (kase == 1) {
            resid = tb.t(i, j, x, r);
            for (int k = x + 1; k <= y; ++k)
                resid -= series_conv(A, series(i, k, x), series(k, j, y), r);
        } else if (kase == 2) {
            resid = tb.t(i, j, x, r);
            for (int k = x + 1; k <= y; ++k)
                resid -= series_conv(A, series(i, k, y), series(k, j, x), r);
        } else if (kase == 3) {
            resid = tb.t(i, j, x, r) - tb.t(i, j, y, r);
            for (int k = x + 1; k <= y; ++k)
                for (int l = x + 1; l <= y; ++l) {
                    GenSeries kl = series(k, l, x), lj = series(l, j, y);
                    GenSeries mid(r_max + 1);
                    for (int rr = 0; rr <= r_max; ++rr) mid[rr] = series_conv(A, kl, lj, rr);
                    resid -= series_conv(A, series(i, k, y), mid, r);
                }
        } else {
            for (int k = x + 1; k <= y; ++k)
                resid += series_conv(A, series(i, k, x), series(k, j, y), r);
            if (i == j && r == 0) resid += A.unit();
        }
        if (!resid.is_zero_elem()) {
            c.status = Check::St::Fail;
            c.params.emplace_back("order", r);
            c.residual = A.str(resid);
            break;
        }
    }
    return c;
}

VerificationReport lemma92_suite(std::shared_ptr<const Algebra> A, int r_max)
{
    VerificationReport rep;
    rep.pyramid = pyramid_to_json(A->pyramid());
    rep.bound = r_max;
    TBuilder tb(*A);
    int H = A->pyramid().height();
    for (int kase = 1; kase <= 4; ++kase) {
        int emitted = 0;
        for (int x = 0; x < H; ++x)
            for (int y = x + 1; y <= H; ++y)
                for (int i = 1; i <= H; ++i)
                    for (int j = 1; j <= H; ++j) {
                        Check c = lemma92_check(tb, kase, x, y, i, j, r_max);
                        if (c.status == Check::St::Skip) continue;
                        rep.checks.push_back(std::move(c));
                        ++emitted;
                    }
        if (!emitted)
            rep.checks.push_back(Check::skip("lemma92-case" + std::to_string(kase), "no instances"));
    }
    rep.sort_checks();
    return rep;
}

} // namespace wsy
