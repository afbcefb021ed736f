#include "eepc/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eepc {

namespace {
#ifdef _OPENMP
const int kDefaultWorkers = omp_get_max_threads();
#endif
}  // namespace

void set_worker_count(int jobs) {
#ifdef _OPENMP
  omp_set_num_threads(jobs > 0 ? jobs : kDefaultWorkers);
#else
  (void)jobs;
#endif
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace eepc
