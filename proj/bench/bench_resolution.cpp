// Times resolution-of-identity assembly: node-by-node serial reference
// against the factorised kernel, serial and OpenMP.
//
//   bench_resolution [modes] [grid_r] [grid_zeta] [polar] [azimuth]

#include "vcskit/resolution.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace vcskit;

namespace {

template <class Fn>
double seconds(Fn&& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  const int modes = argc > 1 ? std::atoi(argv[1]) : 12;
  verify::GridSpec spec;
  spec.radial = argc > 2 ? std::atoi(argv[2]) : 24;
  spec.zeta = argc > 3 ? std::atoi(argv[3]) : 32;
  spec.sphere_polar = argc > 4 ? std::atoi(argv[4]) : 4;
  spec.sphere_azimuth = argc > 5 ? std::atoi(argv[5]) : 8;

  const vcs::FamilySpec fam = vcs::family_spec(vcs::Family::canonical);
  const verify::QuadratureGrid grid = verify::QuadratureGrid::build(spec, fam, modes - 1, 2);
  std::printf("modes=%d nodes=%zu threads=%d\n", modes, grid.size(), omp_get_max_threads());

  MatrixXc ref;
  MatrixXc ser;
  MatrixXc par;
  const double t_ref = seconds([&] { ref = verify::assemble_resolution_reference(fam, 2, modes, grid); }, 1);
  const double t_ser = seconds(
      [&] { ser = verify::assemble_resolution(fam, 2, modes, grid, {verify::Execution::serial, true, nullptr}); }, 20);
  const double t_par = seconds(
      [&] { par = verify::assemble_resolution(fam, 2, modes, grid, {verify::Execution::parallel, true, nullptr}); },
      20);

  std::printf("%-22s %12.6f s\n", "reference (serial)", t_ref);
  std::printf("%-22s %12.6f s  speedup %8.1fx\n", "factorised serial", t_ser, t_ref / t_ser);
  std::printf("%-22s %12.6f s  speedup %8.1fx\n", "factorised parallel", t_par, t_ref / t_par);
  std::printf("max |ref - serial|   = %.3e\n", (ref - ser).cwiseAbs().maxCoeff());
  std::printf("max |serial - para|  = %.3e\n", (ser - par).cwiseAbs().maxCoeff());
  return 0;
}
