#include "toric.hpp"

#include <numeric>

#include "error.hpp"
#include "lattice.hpp"

namespace ql {

namespace {

long det2(Ray a, Ray b) { return a.first * b.second - a.second * b.first; }

// s with prev + next = s·r.
long neighbour_coefficient(Ray prev, Ray r, Ray next) {
    long sx = prev.first + next.first, sy = prev.second + next.second;
    long s = r.first != 0 ? sx / r.first : sy / r.second;
    if (sx != s * r.first || sy != s * r.second)
        fail(Errc::ConsistencyError, "fan is not regular at a ray");
    return s;
}

long p_exponent(Int v, long p, bool& exact) {
    v = abs(v);
    long e = 0;
    while (v > 1 && mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
        v /= p;
        ++e;
    }
    exact = (v == 1);
    return e;
}

void check_exponent(long p, long q) {
    if (!is_prime(p)) fail(Errc::InvalidArgument, std::to_string(p) + " is not prime");
    if (q < 1 || q >= p) fail(Errc::InvalidArgument, "exponent must lie in [1, p-1]");
}

}  // namespace

std::vector<long> hj_expand(long n, long q) {
    if (n <= 1 || q < 1 || q >= n) fail(Errc::InvalidArgument, "need n > 1 and 1 <= q < n");
    if (std::gcd(n, q) != 1) fail(Errc::NotCoprime, std::to_string(n) + " and " + std::to_string(q) + " are not coprime");
    std::vector<long> out;
    while (q != 0) {
        long a = (n + q - 1) / q;
        out.push_back(a);
        long r = a * q - n;
        n = q;
        q = r;
    }
    return out;
}

Rat hj_value(const std::vector<long>& a) {
    if (a.empty()) fail(Errc::InvalidArgument, "empty continued fraction");
    Rat v = a.back();
    for (std::size_t i = a.size() - 1; i-- > 0;) v = Rat(a[i]) - 1 / v;
    v.canonicalize();
    return v;
}

std::vector<Ray> regularize_cone(Ray a, Ray b) {
    long d = det2(a, b);
    if (d <= 0) fail(Errc::InvalidArgument, "cone is not positively oriented");
    std::vector<Ray> out;
    while (d > 1) {
        long t = 0;
        while ((b.first + t * a.first) % d != 0 || (b.second + t * a.second) % d != 0) ++t;
        Ray c{(b.first + t * a.first) / d, (b.second + t * a.second) / d};
        out.push_back(c);
        a = c;
        d = det2(a, b);
    }
    return out;
}

Resolution2D resolve_2d(long p, long q) {
    check_exponent(p, q);
    Resolution2D r;
    r.p = p;
    r.q = q;
    Ray a{p, -q}, b{0, 1};
    std::vector<Ray> inner = regularize_cone(a, b);
    r.fan.rays.push_back(a);
    r.fan.rays.insert(r.fan.rays.end(), inner.begin(), inner.end());
    r.fan.rays.push_back(b);
    r.fan.self_intersection.assign(r.fan.rays.size(), 0);
    for (std::size_t i = 1; i + 1 < r.fan.rays.size(); ++i)
        r.fan.self_intersection[i] = -neighbour_coefficient(r.fan.rays[i - 1], r.fan.rays[i], r.fan.rays[i + 1]);
    for (std::size_t i = inner.size(); i >= 1; --i) r.exceptional.push_back(-r.fan.self_intersection[i]);
    return r;
}

WeightCase weight_case_2d(long p, long q, Compactification choice) {
    Resolution2D res = resolve_2d(p, q);
    Ray a = res.fan.rays.front(), b = res.fan.rays.back();
    std::size_t n_exc = res.exceptional.size();

    // rays added outside the cone, from b around to a
    std::vector<Ray> corners;
    if (choice == Compactification::PaperChoice)
        corners = {{-1, 0}};
    else
        corners = {{-1, 1}, {0, -1}};
    std::vector<Ray> added;
    Ray prev = b;
    for (const Ray& c : corners) {
        auto mid = regularize_cone(prev, c);
        added.insert(added.end(), mid.begin(), mid.end());
        added.push_back(c);
        prev = c;
    }
    auto last = regularize_cone(prev, a);
    added.insert(added.end(), last.begin(), last.end());

    WeightCase wc;
    Fan2D& fan = wc.complete_fan;
    fan.complete = true;
    fan.rays = res.fan.rays;
    fan.rays.insert(fan.rays.end(), added.begin(), added.end());
    std::size_t R = fan.rays.size();
    fan.self_intersection.resize(R);
    IMat inter(R, R);
    for (std::size_t i = 0; i < R; ++i) {
        Ray before = fan.rays[(i + R - 1) % R], after = fan.rays[(i + 1) % R];
        if (det2(fan.rays[i], after) != 1) fail(Errc::ConsistencyError, "complete fan is not regular");
        fan.self_intersection[i] = -neighbour_coefficient(before, fan.rays[i], after);
        inter(i, i) = fan.self_intersection[i];
        inter(i, (i + 1) % R) = 1;
        inter((i + 1) % R, i) = 1;
    }
    // Danilov relations lie in the radical of the intersection form
    for (int m = 0; m < 2; ++m) {
        IVec rel(R);
        for (std::size_t i = 0; i < R; ++i) rel[i] = m == 0 ? fan.rays[i].first : fan.rays[i].second;
        for (const auto& v : mul_vec(inter, rel))
            if (sgn(v) != 0) fail(Errc::ConsistencyError, "Danilov relation is not in the radical");
    }

    // Basis D_2..D_{R-1}; rays 0 and 1 form a basis of N, so D_0, D_1 are eliminated.
    Ray r0 = fan.rays[0], r1 = fan.rays[1];
    // dual basis of (r0, r1): inverse of the unimodular matrix with columns r0, r1
    long dt = det2(r0, r1);
    Ray m0{r1.second * dt, -r1.first * dt}, m1{-r0.second * dt, r0.first * dt};
    std::size_t h = R - 2;
    auto class_of = [&](std::size_t k) {
        IVec v(h);
        if (k >= 2) {
            v[k - 2] = 1;
            return v;
        }
        Ray m = k == 0 ? m0 : m1;
        for (std::size_t i = 2; i < R; ++i) v[i - 2] = -(m.first * fan.rays[i].first + m.second * fan.rays[i].second);
        return v;
    };
    IMat gram = submatrix(inter, 2, 2, h, h);
    if (abs(det(gram)) != 1) fail(Errc::ConsistencyError, "H^2 of the compactification is not unimodular");

    std::vector<IVec> exc_rows, bnd_rows;
    for (std::size_t i = 1; i <= n_exc; ++i) exc_rows.push_back(class_of(i));
    for (std::size_t i = n_exc + 2; i < R; ++i) bnd_rows.push_back(class_of(i));
    IMat exc = rows_to_matrix(exc_rows, h);
    IMat bnd = rows_to_matrix(bnd_rows, h);

    bool exact = false;
    wc.log_discr_im_g = p_exponent(det(exc * gram * exc.transpose()), p, exact);
    if (!exact) fail(Errc::ClassificationFailure, "discriminant of the exceptional lattice is not a power of p");
    wc.discr_boundary = bnd.rows ? abs(det(bnd * gram * bnd.transpose())) : Int(1);

    for (const auto& d : smith_normal_form(exc).diag)
        if (d != 1) wc.rktor_h2_u += p_exponent(d, p, exact);

    // The resolution retracts onto its exceptional chain of rational curves, and
    // H^3(closure, U'') is dual to H_1 of that chain, which is zero.
    wc.rktor_h3_rel = 0;

    IMat res_rel(res.fan.rays.size(), 2);
    for (std::size_t i = 0; i < res.fan.rays.size(); ++i) {
        res_rel(i, 0) = res.fan.rays[i].first;
        res_rel(i, 1) = res.fan.rays[i].second;
    }
    for (const auto& d : smith_normal_form(res_rel).diag)
        if (d != 1) wc.rktor_h2_res += p_exponent(d, p, exact);

    auto is = [&](long d, long t3, long tu, long tr) {
        return wc.log_discr_im_g == d && wc.rktor_h3_rel == t3 && wc.rktor_h2_u == tu && wc.rktor_h2_res == tr;
    };
    if (is(0, 1, 1, 0))
        wc.label = "i)";
    else if (is(0, 0, 0, 1))
        wc.label = "ii)/iv)";
    else if (is(2, 0, 1, 0))
        wc.label = "iii)";
    else if (is(1, 0, 0, 0))
        wc.label = "v)";
    else
        fail(Errc::ClassificationFailure, "toric data for 1/" + std::to_string(p) + "(1," + std::to_string(q) +
                                              ") match none of the five cases");
    wc.weight = static_cast<int>(wc.log_discr_im_g + 2 * wc.rktor_h3_rel);
    return wc;
}

WeightValue weight_dim2(long p, long q) {
    WeightCase a = weight_case_2d(p, q, Compactification::PaperChoice);
    WeightCase b = weight_case_2d(p, q, Compactification::ThreeRays);
    if (a.weight != b.weight)
        fail(Errc::ConsistencyError, "weight depends on the compactification for 1/" + std::to_string(p) + "(1," +
                                         std::to_string(q) + ")");
    return WeightValue::exact(a.weight);
}

WeightValue weight_lookup(const FixedPointLocal& fp) {
    if (!fp.isolated() || fp.dim() % 2 != 0) return WeightValue::unknown();
    long p = fp.p;
    if (fp.dim() == 2) {
        // rewrite as 1/p(1, q) with the generator ξ^{k_1^{-1}}
        long inv = 1;
        while (inv * fp.k[0] % p != 1) ++inv;
        return weight_dim2(p, fp.k[1] * inv % p);
    }
    PointType t = classify_fixed_point(fp).type;
    if (t == PointType::One || t == PointType::Two) return WeightValue::exact(1);
    FixedPointLocal c = canonical_generator(fp);
    std::vector<long> all(static_cast<std::size_t>(p - 1));
    std::iota(all.begin(), all.end(), 1L);
    if (c.k == all) return WeightValue::exact(1);
    if (p == 5 && (c.k == std::vector<long>{1, 1, 4, 4} || c.k == std::vector<long>{1, 1, 1, 2}))
        return WeightValue::exact(1);
    return WeightValue::unknown();
}

}  // namespace ql
