#pragma once

#include <string>
#include <utility>
#include <vector>

#include "local_action.hpp"
#include "matrix.hpp"

namespace ql {

using Ray = std::pair<long, long>;

// n/q = a_1 - 1/(a_2 - 1/(...)), every a_i >= 2.
std::vector<long> hj_expand(long n, long q);
// Exact value of the continued fraction as a reduced fraction.
Rat hj_value(const std::vector<long>& a);

struct Fan2D {
    std::vector<Ray> rays;             // counterclockwise
    bool complete = false;             // last cone closes the cycle
    std::vector<long> self_intersection;  // per ray, when defined (interior of the fan)
};

// Regular subdivision of the cone (a, b), det(a, b) > 0; returns the inserted rays a→b.
std::vector<Ray> regularize_cone(Ray a, Ray b);

// Minimal resolution of 1/p(1,q): the cone ((p,-q), (0,1)) subdivided.
// Exceptional rays are listed from the (0,1) side, matching hj_expand(p, q).
struct Resolution2D {
    long p = 0, q = 0;
    Fan2D fan;                      // rays: (p,-q), exceptional..., (0,1)
    std::vector<long> exceptional;  // a_i, so self-intersections are -a_i
};

Resolution2D resolve_2d(long p, long q);

enum class Compactification { PaperChoice, ThreeRays };

struct WeightCase {
    std::string label;       // i) .. v)
    long log_discr_im_g = 0;  // log_p discr of the exceptional lattice in H^2
    long rktor_h3_rel = 0;    // H^3(closure, U'')
    long rktor_h2_u = 0;      // H^2(U'')
    long rktor_h2_res = 0;    // H^2 of the resolution
    Int discr_boundary;       // discr of the lattice of added boundary rays
    int weight = 0;
    Fan2D complete_fan;
};

WeightCase weight_case_2d(long p, long q, Compactification c);

// Computes with two compactifications and requires the weights to agree.
WeightValue weight_dim2(long p, long q);

WeightValue weight_lookup(const FixedPointLocal& fp);

}  // namespace ql
