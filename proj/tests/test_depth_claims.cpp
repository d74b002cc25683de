// Claims that microwave nonclassicality improves the optical pair.  Kept
// apart from the unit suites: under the noise moments as implemented these
// fail, and the failure should stay visible on its own.

#include <doctest.h>

#include "cvnet/qelement.hpp"

using namespace cvnet;

TEST_CASE("single element: depth 0.497 entangles the pair more than depth 0") {
  const auto p = qelement::reference_parameters();
  const auto part = sympgauss::Bipartition::one_vs_rest(0, 2);
  const double deep = sympgauss::log_negativity(qelement::output_spectral_cm(p, {1.0, 0.497, 0.0}, 0.0), part);
  const double flat = sympgauss::log_negativity(qelement::output_spectral_cm(p, {1.0, 0.0, 0.0}, 0.0), part);
  CHECK(deep > flat);
}
