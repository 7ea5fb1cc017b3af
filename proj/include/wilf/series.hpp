#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace wilf {

using BigInt = boost::multiprecision::cpp_int;

/// A power series with exact integer coefficients, truncated at a fixed
/// cutoff. All arithmetic is exact through the cutoff degree; mixed-cutoff
/// operands truncate to the smaller cutoff.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int cutoff);
    TruncatedSeries(int cutoff, std::vector<BigInt> coefficients);

    static TruncatedSeries one(int cutoff);

    int cutoff() const { return cutoff_; }
    const BigInt& coeff(int degree) const;
    void set_coeff(int degree, BigInt value);

    TruncatedSeries operator+(const TruncatedSeries& rhs) const;
    TruncatedSeries operator-(const TruncatedSeries& rhs) const;
    TruncatedSeries operator*(const TruncatedSeries& rhs) const;

    /// Multiplicative inverse; requires constant term 1.
    TruncatedSeries reciprocal() const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    int cutoff_ = 0;
    std::vector<BigInt> coeffs_;  // degrees 0..cutoff_
};

}  // namespace wilf
