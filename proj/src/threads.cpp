#include "hsw/common.hpp"

#include <omp.h>

namespace hsw {

void set_threads(int threads) {
  const int n = threads > 0 ? threads : omp_get_num_procs();
  omp_set_num_threads(n);
  Eigen::setNbThreads(n);
}

int threads() { return omp_get_max_threads(); }

}  // namespace hsw
