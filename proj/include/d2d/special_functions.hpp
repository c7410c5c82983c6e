#pragma once

namespace d2d {

// e^x * E1(x) for x > 0, computed jointly so large x never overflows.
// Series for small x, modified-Lentz continued fraction otherwise.
double exp_e1(double x);

}  // namespace d2d
