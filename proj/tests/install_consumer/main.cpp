#include <cmath>
#include <cstdio>

#include "selfish/analytic.hpp"

int main() {
  const double r = selfish::relative_revenue({0.25, 0.5});
  std::printf("%.12g\n", r);
  return std::abs(r - 0.25) < 1e-12 ? 0 : 1;
}
