#include "quadword/growth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "quadword/error.hpp"

namespace quadword {

  namespace {
    void check_trusted(ComplexityProfile const& profile, std::size_t n) {
      if (n > profile.n_max() || n > profile.n_trust) {
        throw HorizonError("n = " + std::to_string(n)
                           + " is beyond the trusted horizon "
                           + std::to_string(std::min(profile.n_max(),
                                                     profile.n_trust)));
      }
    }

    double to_double(BigInt const& x) {
      return x.convert_to<double>();
    }
  }  // namespace

  BigInt binomial2(std::size_t n_plus_one) {
    BigInt m = n_plus_one;
    return m * (m - 1) / 2;
  }

  std::vector<BigInt> growth_series(ComplexityProfile const& profile,
                                    std::size_t              n_max) {
    check_trusted(profile, n_max);
    std::vector<BigInt> dims;
    dims.reserve(n_max + 1);
    BigInt running = 1;
    dims.push_back(running);
    for (std::size_t n = 1; n <= n_max; ++n) {
      running += profile.p[n];
      dims.push_back(running);
    }
    return dims;
  }

  BigInt growth_function(ComplexityProfile const& profile, std::size_t n) {
    return growth_series(profile, n).back();
  }

  double estimate_gk(std::vector<BigInt> const& dims,
                     std::size_t                n_lo,
                     std::size_t                n_hi) {
    if (n_lo < 4 || n_hi < 4 * n_lo) {
      throw HorizonError("GK window needs n_hi >= 4 n_lo >= 16");
    }
    if (dims.size() <= n_hi) {
      throw HorizonError("GK window extends past the computed dimensions");
    }
    double      sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
      double x = std::log(static_cast<double>(n));
      double y = std::log(to_double(dims[n]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
    double const k = static_cast<double>(count);
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }

  double estimate_growth_constant(std::vector<BigInt> const& dims,
                                  std::size_t                n_hi) {
    if (n_hi < 100) {
      throw HorizonError("growth constant estimate needs n_hi >= 100");
    }
    if (dims.size() <= n_hi) {
      throw HorizonError("window extends past the computed dimensions");
    }
    double best = 0;
    for (std::size_t n = (n_hi + 9) / 10; n <= n_hi; ++n) {
      double nn = static_cast<double>(n);
      best      = std::max(best, to_double(dims[n]) / (nn * nn));
    }
    return best;
  }

  GrowthReport growth_report(ComplexityProfile const& profile,
                             std::size_t              n_max) {
    GrowthReport report;
    report.dims = growth_series(profile, n_max);
    report.n_hi = n_max;
    report.n_lo = std::max<std::size_t>(4, n_max / 10);
    if (n_max >= 16) {
      report.n_lo        = std::min(report.n_lo, n_max / 4);
      report.gk_estimate = estimate_gk(report.dims, report.n_lo, report.n_hi);
      report.c_lower     = INFINITY;
      for (std::size_t n = report.n_lo; n <= report.n_hi; ++n) {
        double nn    = static_cast<double>(n);
        double ratio = to_double(report.dims[n]) / (nn * nn);
        report.c_lower = std::min(report.c_lower, ratio);
        report.c_upper = std::max(report.c_upper, ratio);
      }
    }
    if (n_max >= 100) {
      report.gc_estimate = estimate_growth_constant(report.dims, n_max);
    }
    return report;
  }

  std::vector<BoundCheck> check_growth_sandwich(ComplexityProfile const& profile,
                                                std::size_t n_max) {
    auto const              dims = growth_series(profile, n_max);
    std::vector<BoundCheck> out;
    long double             upper = 1.0L + static_cast<long double>(profile.at(1));
    for (std::size_t n = 2; n <= n_max; ++n) {
      long double lg = std::log2(static_cast<long double>(n));
      upper += 100.0L * static_cast<long double>(n + 1) * lg * lg;
      BoundCheck check{n, static_cast<double>(upper), dims[n], false};
      bool const lower_ok = binomial2(n + 1) <= dims[n];
      bool const upper_ok = dims[n].convert_to<long double>() <= upper;
      check.pass = lower_ok && upper_ok;
      out.push_back(std::move(check));
    }
    return out;
  }

  UBoundReport check_u_bounds(ComplexityProfile const& profile,
                              ConstructionTrace const& trace,
                              std::size_t              n_max) {
    n_max = std::min({n_max, profile.n_max(), profile.n_trust});
    if (n_max < 2) {
      throw HorizonError("check_u_bounds needs a profile trusted to n >= 2");
    }
    if (trace.anchors.empty() || trace.anchors.back().length() <= n_max) {
      throw RangeError("trace anchors do not extend past n = "
                       + std::to_string(n_max));
    }
    UBoundReport report;
    report.n_checked = n_max;
    std::size_t d    = 0;
    for (std::size_t n = 2; n <= n_max; ++n) {
      while (d < trace.anchors.size() && trace.anchors[d].length() <= n) {
        ++d;
      }
      UBoundEntry e{};
      e.n  = n;
      e.f  = profile.p[n];
      double const lg = std::log2(static_cast<double>(n));
      e.bound   = 100.0 * static_cast<double>(n + 1) * lg * lg;
      e.pass    = static_cast<double>(e.f) <= e.bound;
      e.d       = d;
      e.d_bound = static_cast<std::size_t>(std::bit_width(n));  // floor(log2 n)+1
      e.d_ok    = d >= 1 && d <= e.d_bound;
      double const dd = static_cast<double>(d);
      double const nn = static_cast<double>(n);
      e.ratio_12 = static_cast<double>(e.f) / (12.0 * dd * dd * (nn + 1));
      e.ratio_16 = static_cast<double>(e.f) / (2.0 * (nn + 1) + 16.0 * dd * dd * nn);
      report.ok  = report.ok && e.pass && e.d_ok;
      report.entries.push_back(e);
    }
    return report;
  }

}  // namespace quadword
