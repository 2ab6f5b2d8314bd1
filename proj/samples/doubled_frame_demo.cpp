// Builds the doubled frame over the standard basis of R^d and measures the
// c_0 constants of its kernel blocks e_{2k} - e_{2k-1}.

#include <cstdio>
#include <cstdlib>

#include "framekit/framekit.hpp"

int main(int argc, char** argv) {
  const Eigen::Index d = argc > 1 ? std::atoi(argv[1]) : 4;
  const auto fr = framekit::doubled_frame(Eigen::MatrixXd::Identity(d, d));
  const auto ex = framekit::excess(fr);
  std::printf("d = %ld, N = %ld, dim ker S = %ld, deletion excess = %ld\n", static_cast<long>(d),
              static_cast<long>(fr.size()), static_cast<long>(ex.kernel_dim),
              static_cast<long>(ex.deletion_excess));

  const auto blocks = framekit::example_blocks(fr);
  const auto c = framekit::c0_constants(fr, blocks);
  std::printf("A = %.12f, B = %.12f, distortion = %.12f\n", c.A, c.B, c.distortion);
  return 0;
}
