#include "syz/normal_bundle.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace syz {

IntMatrix complete_lambda(const IntMatrix& partial) {
    const std::size_t rows = partial.rows(), cols = partial.cols();
    IntMatrix full(rows + 1, cols);
    for (std::size_t l = 0; l < cols; ++l) {
        Integer s = 0;
        for (std::size_t j = 0; j < rows; ++j) {
            full(j + 1, l) = partial(j, l);
            s += partial(j, l);
        }
        full(0, l) = 1 - s;
    }
    return full;
}

StratumData make_stratum(std::string id, std::size_t n, Fan fanZ, const IntMatrix& partial_lambda) {
    StratumData s;
    s.id = std::move(id);
    s.n = n;
    s.r = fanZ.dim;
    if (partial_lambda.rows() + s.r != n) throw Error("make_stratum: expected n-r lambda rows");
    if (partial_lambda.rows() > 0 && partial_lambda.cols() != fanZ.rays.size())
        throw Error("make_stratum: lambda columns differ from ray count");
    IntMatrix partial = partial_lambda.rows() ? partial_lambda : IntMatrix(0, fanZ.rays.size());
    s.lambda = complete_lambda(partial);
    s.fanZ = std::move(fanZ);
    s.cartier.assign(s.j_size(), true);
    return s;
}

std::vector<std::string> validate_stratum(const StratumData& s) {
    std::vector<std::string> v = validate_fan(s.fanZ);
    if (s.r != s.fanZ.dim) v.push_back("stratum dimension differs from fan dimension");
    if (s.r > s.n) v.push_back("stratum dimension exceeds ambient dimension");
    if (s.lambda.rows() != s.n - s.r + 1) v.push_back("lambda must have n-r+1 rows");
    if (s.lambda.cols() != s.fanZ.rays.size()) v.push_back("lambda columns differ from ray count");
    if (!v.empty()) return v;
    for (std::size_t l = 0; l < s.l_size(); ++l) {
        Integer sum = 0;
        for (std::size_t j = 0; j < s.j_size(); ++j) sum += s.lambda(j, l);
        if (sum != 1) v.push_back("lambda column " + std::to_string(l) + " sums to " + to_string(sum));
    }
    if (!s.cartier.empty() && s.cartier.size() != s.j_size()) v.push_back("cartier flags must be one per j");
    return v;
}

NormalFan build_normal_fan(const StratumData& s) {
    if (auto bad = validate_fan(s.fanZ); !bad.empty()) throw Error("build_normal_fan: " + bad.front());
    const std::size_t r = s.r, nj = s.j_size(), dim = r + nj;
    NormalFan nf;
    nf.fan.dim = dim;
    for (std::size_t j = 0; j < nj; ++j) {
        IntVec v(dim);
        v[r + j] = 1;
        nf.fan.rays.push_back(v);
    }
    for (std::size_t l = 0; l < s.l_size(); ++l) {
        IntVec v(dim);
        for (std::size_t k = 0; k < r; ++k) v[k] = s.fanZ.rays[l][k];
        for (std::size_t j = 0; j < nj; ++j) v[r + j] = s.lambda(j, l);
        nf.fan.rays.push_back(v);
    }
    nf.ord_t = IntVec(dim);
    for (std::size_t j = 0; j < nj; ++j) nf.ord_t[r + j] = 1;
    for (std::size_t i = 0; i < nf.fan.rays.size(); ++i)
        if (dot(nf.ord_t, nf.fan.rays[i]) != 1)
            throw Error("build_normal_fan: ord_t is " + to_string(dot(nf.ord_t, nf.fan.rays[i])) + " on ray " +
                        std::to_string(i) + " (lambda column sum violated)");
    for (const auto& c : s.fanZ.cones) {
        Cone hat;
        for (std::size_t j = 0; j < nj; ++j) hat.push_back(j);
        for (auto l : c) hat.push_back(nj + l);
        nf.fan.cones.push_back(hat);
    }
    return nf;
}

WallIntersections wall_intersections(const StratumData& s, const Wall& w) {
    WallIntersections out;
    out.z = wall_curve_intersections(s.fanZ, w);
    out.d = IntVec(s.j_size());
    for (std::size_t j = 0; j < s.j_size(); ++j) {
        Integer v = 0;
        for (std::size_t l = 0; l < s.l_size(); ++l) v -= s.lambda(j, l) * out.z[l];
        out.d[j] = v;
    }
    return out;
}

std::optional<std::size_t> verify_normal_fan_relation(const StratumData& s, const NormalFan& nf,
                                                      const std::vector<IntVec>* d_override) {
    auto ws = walls(s.fanZ);
    if (d_override && d_override->size() != ws.size())
        throw Error("verify_normal_fan_relation: one (C.D_j) vector per wall expected");
    const std::size_t nj = s.j_size();
    for (std::size_t k = 0; k < ws.size(); ++k) {
        WallIntersections c = wall_intersections(s, ws[k]);
        if (d_override) c.d = (*d_override)[k];
        IntVec sum(nf.fan.dim);
        for (std::size_t j = 0; j < nj; ++j) sum = sum + c.d[j] * nf.fan.rays[j];
        for (std::size_t l = 0; l < s.l_size(); ++l) sum = sum + c.z[l] * nf.fan.rays[nj + l];
        if (!sum.is_zero()) return k;
    }
    return std::nullopt;
}

TorusDivisor restrict_to_z(const StratumData& s, const IntVec& coeff) {
    const std::size_t nj = s.j_size();
    TorusDivisor z(s.l_size());
    for (std::size_t l = 0; l < s.l_size(); ++l) {
        z[l] = coeff[nj + l];
        for (std::size_t j = 0; j < nj; ++j) z[l] -= coeff[j] * s.lambda(j, l);
    }
    return z;
}

WDivisorSet w_divisors(const StratumData& s, std::size_t cone) {
    const Fan& f = s.fanZ;
    const Cone& sigma = f.cones.at(cone);
    const std::size_t nj = s.j_size(), ni = s.i_size();
    WDivisorSet out;
    auto columns_det = [&](const IntVec& first, std::size_t skip) {
        std::vector<IntVec> cols{first};
        for (auto l : sigma)
            if (l != skip) cols.push_back(f.rays[l]);
        return det(IntMatrix::from_columns(cols, f.dim));
    };
    for (auto i : sigma) {
        Integer den = columns_det(f.rays[i], i);
        if (den != 1 && den != -1) throw Error("w_divisors: cone is not smooth");
        WDivisor w{WDivisor::Kind::L, i, cone, IntVec(ni)};
        for (std::size_t l = 0; l < s.l_size(); ++l) w.coeff[nj + l] = -columns_det(f.rays[l], i) / den;
        out.divisors.push_back(w);
    }
    const std::size_t nl_sigma = out.divisors.size();
    for (std::size_t j = 0; j < nj; ++j) {
        WDivisor w{WDivisor::Kind::J, j, cone, IntVec(ni)};
        w.coeff[j] = -1;
        for (std::size_t l = 0; l < s.l_size(); ++l) w.coeff[nj + l] -= s.lambda(j, l);
        for (std::size_t p = 0; p < nl_sigma; ++p)
            w.coeff = w.coeff - s.lambda(j, sigma[p]) * out.divisors[p].coeff;
        out.divisors.push_back(w);
    }
    auto note = [&](const WDivisor& w, const std::string& what) {
        std::string tag = (w.kind == WDivisor::Kind::L ? "W_i[" : "W_j[") + std::to_string(w.index) + "]";
        out.violations.push_back(tag + " " + what);
    };
    for (const auto& w : out.divisors) {
        const std::size_t own = w.kind == WDivisor::Kind::L ? nj + w.index : w.index;
        if (w.coeff[own] != -1) note(w, "multiplicity along its own component is not -1");
        for (auto l : sigma)
            if (nj + l != own && w.coeff[nj + l] != 0) note(w, "nonzero multiplicity on L_sigma");
        for (std::size_t j = 0; j < nj; ++j)
            if (j != own && w.coeff[j] != 0) note(w, "nonzero multiplicity on J");
        if (!is_principal(f, restrict_to_z(s, w.coeff))) note(w, "restriction to Z is not principal");
    }
    return out;
}

std::optional<std::string> verify_w_sum(const StratumData& s, std::size_t cone) {
    auto ws = w_divisors(s, cone);
    IntVec sum(s.i_size());
    for (const auto& w : ws.divisors) sum = sum + w.coeff;
    for (std::size_t i = 0; i < s.i_size(); ++i)
        if (sum[i] != -1)
            return "W-sum coefficient at index " + std::to_string(i) + " is " + to_string(sum[i]) + ", expected -1";
    return std::nullopt;
}

namespace {

struct Adjacent {
    Cone shared;
    std::size_t i0, i_inf;
};

Adjacent adjacency(const StratumData& s, std::size_t sigma, std::size_t sigma2) {
    Cone a = normalized(s.fanZ.cones.at(sigma)), b = normalized(s.fanZ.cones.at(sigma2));
    Adjacent adj;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(adj.shared));
    if (a.size() != s.r || b.size() != s.r || adj.shared.size() + 1 != s.r)
        throw Error("cone_change_matrix: cones are not adjacent maximal cones");
    for (auto x : a)
        if (!std::binary_search(adj.shared.begin(), adj.shared.end(), x)) adj.i0 = x;
    for (auto x : b)
        if (!std::binary_search(adj.shared.begin(), adj.shared.end(), x)) adj.i_inf = x;
    return adj;
}

}  // namespace

ConeChange cone_change_matrix(const StratumData& s, std::size_t sigma, std::size_t sigma2) {
    Adjacent adj = adjacency(s, sigma, sigma2);
    ConeChange c;
    c.sigma = sigma;
    c.sigma2 = sigma2;
    c.shared = adj.shared;
    c.i0 = adj.i0;
    c.i_inf = adj.i_inf;
    c.curve = wall_intersections(s, Wall{adj.shared, sigma, sigma2, adj.i0, adj.i_inf});
    const std::size_t k = adj.shared.size(), nj = s.j_size(), n = k + 1 + nj;
    c.matrix = IntMatrix::identity(n);
    for (std::size_t a = 0; a < k; ++a) c.matrix(a, k) = -c.curve.z[adj.shared[a]];
    c.matrix(k, k) = -1;
    for (std::size_t j = 0; j < nj; ++j) c.matrix(k + 1 + j, k) = -c.curve.d[j];
    if (!is_unimodular(c.matrix)) throw Error("cone_change_matrix: matrix is not unimodular");
    return c;
}

IntMatrix labelled_change(const StratumData& s, const ConeChange& c) {
    const std::size_t k = c.shared.size(), nj = s.j_size(), n = k + 1 + nj;
    auto slot_of = [&](const Cone& sorted_cone, std::size_t extra) {
        std::vector<std::size_t> slot(n);
        for (std::size_t p = 0; p < sorted_cone.size(); ++p) {
            auto it = std::find(c.shared.begin(), c.shared.end(), sorted_cone[p]);
            slot[p] = it == c.shared.end() ? k : std::size_t(it - c.shared.begin());
            if (it == c.shared.end() && sorted_cone[p] != extra) throw Error("labelled_change: inconsistent cones");
        }
        for (std::size_t j = 0; j < nj; ++j) slot[sorted_cone.size() + j] = k + 1 + j;
        return slot;
    };
    Cone a = normalized(s.fanZ.cones[c.sigma]), b = normalized(s.fanZ.cones[c.sigma2]);
    auto col_slot = slot_of(a, c.i0), row_slot = slot_of(b, c.i_inf);
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t q = 0; q < n; ++q) m(r, q) = c.matrix(row_slot[r], col_slot[q]);
    return m;
}

std::optional<std::string> verify_w_transform(const StratumData& s, std::size_t sigma, std::size_t sigma2) {
    ConeChange c = cone_change_matrix(s, sigma, sigma2);
    auto w = w_divisors(s, sigma), w2 = w_divisors(s, sigma2);
    auto find = [](const WDivisorSet& set, WDivisor::Kind kind, std::size_t idx) -> const IntVec& {
        for (const auto& d : set.divisors)
            if (d.kind == kind && d.index == idx) return d.coeff;
        throw Error("verify_w_transform: missing divisor");
    };
    const IntVec& w_i0 = find(w, WDivisor::Kind::L, c.i0);
    for (auto i : c.shared) {
        IntVec expect = find(w, WDivisor::Kind::L, i) - c.curve.z[i] * w_i0;
        if (!(find(w2, WDivisor::Kind::L, i) == expect)) return "W_i relation fails at ray " + std::to_string(i);
    }
    if (!(find(w2, WDivisor::Kind::L, c.i_inf) == -w_i0)) return "W_{i_inf} = -W_{i_0} fails";
    for (std::size_t j = 0; j < s.j_size(); ++j) {
        IntVec expect = find(w, WDivisor::Kind::J, j) - c.curve.d[j] * w_i0;
        if (!(find(w2, WDivisor::Kind::J, j) == expect)) return "W_j relation fails at j=" + std::to_string(j);
    }
    // The same relation in matrix form, W' = M W, in slot order.
    const std::size_t k = c.shared.size(), nj = s.j_size();
    std::vector<IntVec> before, after;
    for (auto i : c.shared) before.push_back(find(w, WDivisor::Kind::L, i)), after.push_back(find(w2, WDivisor::Kind::L, i));
    before.push_back(w_i0);
    after.push_back(find(w2, WDivisor::Kind::L, c.i_inf));
    for (std::size_t j = 0; j < nj; ++j) before.push_back(find(w, WDivisor::Kind::J, j)), after.push_back(find(w2, WDivisor::Kind::J, j));
    for (std::size_t r = 0; r < k + 1 + nj; ++r) {
        IntVec acc(s.i_size());
        for (std::size_t q = 0; q < k + 1 + nj; ++q) acc = acc + c.matrix(r, q) * before[q];
        if (!(acc == after[r])) return "matrix form W' = M W fails in row " + std::to_string(r);
    }
    return std::nullopt;
}

std::vector<std::vector<std::size_t>> adjacency_cycles(const Fan& f) {
    const std::size_t n = f.cones.size();
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (const auto& w : walls(f)) {
        adj[w.sigma].push_back(w.sigma2);
        adj[w.sigma2].push_back(w.sigma);
    }
    std::vector<std::size_t> parent(n, n), depth(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::vector<std::pair<std::size_t, std::size_t>> extra;
    while (!queue.empty()) {
        auto c = queue.front();
        queue.pop_front();
        for (auto nb : adj[c]) {
            if (!seen[nb]) {
                seen[nb] = true;
                parent[nb] = c;
                depth[nb] = depth[c] + 1;
                queue.push_back(nb);
            } else if (parent[c] != nb && c < nb) {
                extra.push_back({c, nb});
            }
        }
    }
    auto path_to_root = [&](std::size_t c) {
        std::vector<std::size_t> p{c};
        while (p.back() != 0) p.push_back(parent[p.back()]);
        return p;
    };
    // Each non-tree edge closes one fundamental cycle; these generate all cycles,
    // so trivial products on them give path independence.
    std::vector<std::vector<std::size_t>> cycles;
    for (auto [a, b] : extra) {
        auto pa = path_to_root(a), pb = path_to_root(b);
        std::vector<std::size_t> cyc(pa.rbegin(), pa.rend());
        cyc.insert(cyc.end(), pb.begin(), pb.end());
        cycles.push_back(cyc);
    }
    return cycles;
}

TheoremBReport check_theorem_b(const StratumData& s) {
    TheoremBReport r;
    r.cartier = s.cartier;
    r.connected = s.connected_intersections;
    auto bad = validate_stratum(s);
    if (!bad.empty()) {
        r.completeness = "invalid stratum data: " + bad.front();
        r.verdict = "not certified: " + r.completeness;
        return r;
    }
    auto diag = completeness_diagnostic(s.fanZ);
    r.complete = !diag;
    if (diag) {
        r.completeness = *diag;
        r.verdict = "not certified: fan of Z is not complete (" + *diag + ")";
        return r;
    }
    r.completeness = "complete";
    auto sm = is_smooth(s.fanZ);
    r.smooth = sm.smooth;
    r.nonsmooth_cone = sm.offending_cone;
    if (r.smooth) {
        // Conormal summands O_Z(sum_l lambda_{j,l} Z_l).
        for (std::size_t j = 0; j < s.j_size(); ++j) {
            auto n = is_nef(s.fanZ, s.lambda.row(j));
            r.nef.push_back(NefEntry{j, n.nef, n.failing_wall, n.value});
        }
        r.loop_independent = true;
        for (const auto& cyc : adjacency_cycles(s.fanZ)) {
            ++r.cycles_checked;
            IntMatrix prod = IntMatrix::identity(s.r + s.j_size());
            for (std::size_t k = 0; k + 1 < cyc.size(); ++k)
                prod = labelled_change(s, cone_change_matrix(s, cyc[k], cyc[k + 1])) * prod;
            if (!(prod == IntMatrix::identity(s.r + s.j_size()))) {
                r.loop_independent = false;
                std::string seq;
                for (auto c : cyc) seq += (seq.empty() ? "" : "-") + std::to_string(c);
                r.loop_failure = "cycle " + seq + " gives " + format(prod);
                break;
            }
        }
    }
    bool nef_ok = std::all_of(r.nef.begin(), r.nef.end(), [](const NefEntry& e) { return e.nef; });
    bool cartier_ok = std::all_of(r.cartier.begin(), r.cartier.end(), [](bool b) { return b; });
    r.certified = r.complete && r.smooth && nef_ok && cartier_ok && r.connected && r.loop_independent;
    if (r.certified) {
        r.verdict = "toric along Z (combinatorially certified)";
    } else {
        std::string why;
        auto add = [&](const std::string& x) { why += (why.empty() ? "" : "; ") + x; };
        if (!r.smooth) add("fan of Z is not smooth");
        for (const auto& e : r.nef)
            if (!e.nef) add("conormal summand j=" + std::to_string(e.j) + " not nef (degree " + to_string(e.value) +
                            " on wall " + std::to_string(*e.wall) + ")");
        if (!cartier_ok) add("non-Cartier component");
        if (!r.connected) add("disconnected intersection");
        if (r.smooth && !r.loop_independent) add("cone-change product around a cycle is not the identity");
        r.verdict = "not certified: " + why;
    }
    return r;
}

}  // namespace syz
