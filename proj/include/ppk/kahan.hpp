// kahan.hpp
// Neumaier-compensated summation for long scans of doubles.

#pragma once

#include <cmath>
#include <complex>

namespace ppk {

struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

struct ComplexNeumaierSum {
    NeumaierSum re, im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

} // namespace ppk
