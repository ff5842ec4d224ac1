#include "syz/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace syz {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    auto strip = [](std::string s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
        return s;
    };
    std::string s = strip(text);
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(t.begin());
        return Integer(t);
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw Error("not a rational: '" + text + "'");
        return Rational(to_int(s));
    }
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!valid_int(n) || !valid_int(d)) throw Error("not a rational: '" + text + "'");
    return make_rational(to_int(n), to_int(d));
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

RatVec to_rational(const IntVec& v) {
    RatVec r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] = Rational(v[i]);
    return r;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

bool is_integral(const RatVec& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

bool is_integral(const RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) return false;
    return true;
}

IntVec to_integer(const RatVec& v) {
    IntVec r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (v[i].get_den() != 1) throw Error("non-integral entry " + to_string(v[i]));
        r[i] = v[i].get_num();
    }
    return r;
}

IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw Error("non-integral entry " + to_string(m(i, j)));
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

Integer det(const IntMatrix& m) {
    if (!m.is_square()) throw Error("det: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a, RatVec* rhs) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
        std::size_t p = row;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != row) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
            if (rhs) std::swap((*rhs)[p], (*rhs)[row]);
        }
        Rational inv = 1 / a(row, c);
        for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
        if (rhs) (*rhs)[row] *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
            if (rhs) (*rhs)[i] -= f * (*rhs)[row];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

Rational det(const RatMatrix& m) {
    if (!m.is_square()) throw Error("det: matrix is not square");
    RatMatrix a = m;
    Rational d = 1;
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

bool is_unimodular(const IntMatrix& m) {
    Integer d = det(m);
    return d == 1 || d == -1;
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    return rref(a, nullptr).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

RatMatrix inverse(const RatMatrix& m) {
    if (!m.is_square()) throw Error("inverse: matrix is not square");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug, nullptr);
    if (piv.size() < n || piv[n - 1] != n - 1) throw Error("inverse: singular matrix");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
    if (!m.is_square() || !is_unimodular(m)) throw Error("inverse_unimodular: matrix is not unimodular");
    return to_integer(inverse(to_rational(m)));
}

SolveResult solve_rational(const RatMatrix& a, const RatVec& b) {
    if (a.rows() != b.dim()) throw Error("solve_rational: dimension mismatch");
    RatMatrix m = a;
    RatVec rhs = b;
    auto piv = rref(m, &rhs);
    SolveResult res;
    for (std::size_t i = piv.size(); i < m.rows(); ++i)
        if (rhs[i] != 0) {
            res.status = SolveResult::Status::NoSolution;
            return res;
        }
    if (piv.size() < a.cols()) {
        res.status = SolveResult::Status::NonUnique;
        return res;
    }
    res.status = SolveResult::Status::Unique;
    res.x = RatVec(a.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) res.x[piv[i]] = rhs[i];
    return res;
}

SolveResult solve_rational(const IntMatrix& a, const RatVec& b) { return solve_rational(to_rational(a), b); }

RowEchelon integer_row_echelon(const IntMatrix& a) {
    RowEchelon r{a, IntMatrix::identity(a.rows()), {}};
    IntMatrix& h = r.h;
    IntMatrix& u = r.u;
    const std::size_t m = h.rows(), n = h.cols();
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(j, c));
        for (std::size_t c = 0; c < m; ++c) std::swap(u(i, c), u(j, c));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Integer& f) {
        for (std::size_t c = 0; c < n; ++c) h(dst, c) += f * h(src, c);
        for (std::size_t c = 0; c < m; ++c) u(dst, c) += f * u(src, c);
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t c = 0; c < n; ++c) h(i, c) = -h(i, c);
        for (std::size_t c = 0; c < m; ++c) u(i, c) = -u(i, c);
    };
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        while (true) {
            std::size_t best = m;
            for (std::size_t i = row; i < m; ++i)
                if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == m) break;
            swap_rows(row, best);
            bool done = true;
            for (std::size_t i = row + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(row, c).get_mpz_t());
                add_row(i, row, -q);
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h(row, c) == 0) continue;
        if (h(row, c) < 0) negate_row(row);
        for (std::size_t i = 0; i < row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(row, c).get_mpz_t());
            if (q != 0) add_row(i, row, -q);
        }
        r.pivot_cols.push_back(c);
        ++row;
    }
    return r;
}

std::optional<IntVec> solve_row_span(const IntMatrix& a, const IntVec& d) {
    if (d.dim() != a.cols()) throw Error("solve_row_span: dimension mismatch");
    RowEchelon e = integer_row_echelon(a);
    const std::size_t k = e.pivot_cols.size();
    IntVec y(a.rows());
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t p = e.pivot_cols[i];
        Integer rest = d[p];
        for (std::size_t j = 0; j < i; ++j) rest -= y[j] * e.h(j, p);
        if (!mpz_divisible_p(rest.get_mpz_t(), e.h(i, p).get_mpz_t())) return std::nullopt;
        mpz_divexact(y[i].get_mpz_t(), rest.get_mpz_t(), e.h(i, p).get_mpz_t());
    }
    IntVec check(a.cols());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < a.cols(); ++c) check[c] += y[i] * e.h(i, c);
    if (!(check == d)) return std::nullopt;
    IntVec x(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) x[j] += y[i] * e.u(i, j);
    return x;
}

SmithInvariants smith_invariants(const IntMatrix& input) {
    IntMatrix a = input;
    const std::size_t m = a.rows(), n = a.cols();
    SmithInvariants out;
    std::size_t t = 0;
    while (t < m && t < n) {
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a(i, j) != 0 && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) pi = i, pj = j;
        if (pi == m) break;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(t, j), a(pi, j));
        for (std::size_t i = 0; i < m; ++i) std::swap(a(i, t), a(i, pj));
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (a(i, t) == 0) continue;
            Integer q;
            mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
            for (std::size_t j = t; j < n; ++j) a(i, j) -= q * a(t, j);
            if (a(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (a(t, j) == 0) continue;
            Integer q;
            mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
            for (std::size_t i = t; i < m; ++i) a(i, j) -= q * a(i, t);
            if (a(t, j) != 0) clean = false;
        }
        if (!clean) continue;
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                    for (std::size_t c = t; c < n; ++c) a(t, c) += a(i, c);
                    divides = false;
                    break;
                }
        if (!divides) continue;
        out.factors.push_back(abs(a(t, t)));
        ++t;
    }
    out.rank = out.factors.size();
    return out;
}

Integer gcd_of(const IntVec& v) {
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntVec primitive_part(const IntVec& v) {
    Integer g = gcd_of(v);
    if (g == 0) throw Error("primitive_part: zero vector");
    IntVec r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
    return r;
}

bool is_primitive(const IntVec& v) { return gcd_of(v) == 1; }

IntMatrix extend_to_basis(const std::vector<IntVec>& vs, std::size_t n) {
    IntMatrix v = IntMatrix::from_columns(vs, n);
    const std::size_t k = vs.size();
    RowEchelon e = integer_row_echelon(v);
    if (e.pivot_cols.size() != k) throw Error("extend_to_basis: vectors are dependent");
    IntMatrix top(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) top(i, j) = e.h(i, j);
    if (!is_unimodular(top)) throw Error("extend_to_basis: vectors do not span a saturated sublattice");
    IntMatrix uinv = inverse_unimodular(e.u);
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) b(i, j) = v(i, j);
        for (std::size_t j = k; j < n; ++j) b(i, j) = uinv(i, j);
    }
    return b;
}

namespace {

struct Ineq {
    std::vector<Rational> a;
    Rational b;
};

void normalize(Ineq& q) {
    for (const auto& x : q.a)
        if (x != 0) {
            Rational s = abs(x);
            for (auto& y : q.a) y /= s;
            q.b /= s;
            return;
        }
}

std::string key(const Ineq& q) {
    std::string s;
    for (const auto& x : q.a) s += to_string(x) + ",";
    return s + "|" + to_string(q.b);
}

}  // namespace

bool polyhedron_feasible(const std::vector<RatVec>& eq_rows, const std::vector<Rational>& eq_rhs,
                         const std::vector<RatVec>& le_rows, const std::vector<Rational>& le_rhs) {
    if (eq_rows.size() != eq_rhs.size() || le_rows.size() != le_rhs.size())
        throw Error("polyhedron_feasible: row/rhs count mismatch");
    std::size_t nv = 0;
    for (const auto& r : eq_rows) nv = std::max(nv, r.dim());
    for (const auto& r : le_rows) nv = std::max(nv, r.dim());
    auto lift = [&](const RatVec& r, const Rational& b) {
        Ineq q{std::vector<Rational>(nv, Rational(0)), b};
        for (std::size_t i = 0; i < r.dim(); ++i) q.a[i] = r[i];
        return q;
    };
    std::vector<Ineq> eqs, les;
    for (std::size_t i = 0; i < eq_rows.size(); ++i) eqs.push_back(lift(eq_rows[i], eq_rhs[i]));
    for (std::size_t i = 0; i < le_rows.size(); ++i) les.push_back(lift(le_rows[i], le_rhs[i]));

    for (std::size_t e = 0; e < eqs.size(); ++e) {
        std::size_t p = nv;
        for (std::size_t j = 0; j < nv; ++j)
            if (eqs[e].a[j] != 0) { p = j; break; }
        if (p == nv) {
            if (eqs[e].b != 0) return false;
            continue;
        }
        auto eliminate = [&](Ineq& q) {
            if (q.a[p] == 0) return;
            Rational f = q.a[p] / eqs[e].a[p];
            for (std::size_t j = 0; j < nv; ++j) q.a[j] -= f * eqs[e].a[j];
            q.b -= f * eqs[e].b;
        };
        for (std::size_t o = e + 1; o < eqs.size(); ++o) eliminate(eqs[o]);
        for (auto& q : les) eliminate(q);
    }

    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<Ineq> pos, neg, next;
        for (auto& q : les) {
            if (q.a[v] > 0) pos.push_back(q);
            else if (q.a[v] < 0) neg.push_back(q);
            else next.push_back(q);
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                Ineq c{std::vector<Rational>(nv, Rational(0)), 0};
                Rational fp = -n.a[v], fn = p.a[v];
                for (std::size_t j = 0; j < nv; ++j) c.a[j] = fp * p.a[j] + fn * n.a[j];
                c.b = fp * p.b + fn * n.b;
                next.push_back(c);
            }
        std::set<std::string> seen;
        les.clear();
        for (auto& q : next) {
            normalize(q);
            if (seen.insert(key(q)).second) les.push_back(q);
        }
        for (const auto& q : les) {
            bool zero = std::all_of(q.a.begin(), q.a.end(), [](const Rational& x) { return x == 0; });
            if (zero && q.b < 0) return false;
        }
    }
    for (const auto& q : les)
        if (q.b < 0) return false;
    return true;
}

std::string format(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

std::string format(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

std::string format(const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + to_string(m(i, j));
        s += "]";
    }
    return s + "]";
}

std::string format(const RatMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + to_string(m(i, j));
        s += "]";
    }
    return s + "]";
}

}  // namespace syz
