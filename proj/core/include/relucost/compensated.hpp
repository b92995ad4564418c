#ifndef RELUCOST_COMPENSATED_HPP
#define RELUCOST_COMPENSATED_HPP

#include <cmath>
#include <cstddef>

namespace relucost {

// Error-free transforms. two_sum is Knuth's branch-free version; two_prod
// relies on FMA, so a*b = hi + lo exactly.
struct TwoFloat {
    double hi;
    double lo;
};

inline TwoFloat two_sum(double a, double b) {
    double s = a + b;
    double bp = s - a;
    double err = (a - (s - bp)) + (b - bp);
    return {s, err};
}

inline TwoFloat two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

// Double-double accumulator. Products enter exactly through two_prod, so the
// final result carries only the rounding of the last normalization step.
class DdAccumulator {
  public:
    void add(double x) {
        TwoFloat t = two_sum(hi_, x);
        lo_ += t.lo;
        hi_ = t.hi;
    }

    void add_product(double a, double b) {
        TwoFloat p = two_prod(a, b);
        add(p.hi);
        lo_ += p.lo;
    }

    double value() const { return hi_ + lo_; }

  private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

// Neumaier's compensated sum; cheaper than double-double when inputs are plain values.
class NeumaierSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_dot(const double* a, const double* b, std::size_t n) {
    DdAccumulator acc;
    for (std::size_t i = 0; i < n; ++i) acc.add_product(a[i], b[i]);
    return acc.value();
}

}  // namespace relucost

#endif
