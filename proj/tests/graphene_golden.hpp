#pragma once

#include <complex>
#include <numbers>

#include "cvnet/gplasmon.hpp"

namespace cvnet::testing {

using gplasmon::Complex;
using gplasmon::GrapheneDevice;

// Values from tests/oracles/graphene_reference.py (mpmath, 50 digits).
struct Golden {
  GrapheneDevice dev;
  double omega;
  double mu1, mu2;
  Complex sigma1, sigma2, beta1, beta2, eps1, eps2;
};

inline const Golden kGolden[] = {
    {{1e17, 1e-3, 1e-12, 3.0, 1e-12, 1e6},
     2 * std::numbers::pi * 193e12,
     5.9108657713458039e-20,
     1.1743318252166864e-21,
     {1.2014665391617935e-6, 0.00021827247086231454},
     {-3.179528324652357e-7, -4.158062523327992e-6},
     {98462431.151634802, 541065.3472577207},
     {-1873995.2045716413, 122546.15556134316},
     {592.50912933279843, 6.5120439334419066},
     {-22.562754080437122, 1.3509749503318043}},
    {{1e16, 1e-2, 1e-12, 300.0, 1e-13, 1e6},
     2 * std::numbers::pi * 30e12,
     1.8691798780980771e-20,
     3.7135632965074852e-20,
     {0.00013909566939018837, 0.00041070196007196838},
     {1.2403637339866243e-5, 0.00017453742232105568},
     {7315413.0800706874, 2461138.2699142019},
     {2584362.8059443691, 1708658.6196681846},
     {120.04641757034619, 91.08440453589711},
     {74.370273996894892, 95.41381351051949}},
    {{5e16, 5e-3, 1e-12, 77.0, 5e-13, 1.1e6},
     2 * std::numbers::pi * 5e12,
     4.5975745965622779e-20,
     9.1341579667128386e-21,
     {0.0023296782311136754, 0.0058237512636423389},
     {7.3549941309301919e-5, 0.00018443069220054028},
     {130796.62484709319, 20740.245270000889},
     {1546.7366174740013, 1069.2793105028849},
     {1.5187111993971585, 0.49406271594955884},
     {0.032806482467064777, 0.031314326561864655}},
};

}  // namespace cvnet::testing
