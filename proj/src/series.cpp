#include "wilf/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace wilf {

TruncatedSeries::TruncatedSeries(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("series cutoff must be nonnegative");
    coeffs_.assign(static_cast<size_t>(cutoff) + 1, BigInt(0));
}

TruncatedSeries::TruncatedSeries(int cutoff, std::vector<BigInt> coefficients)
    : TruncatedSeries(cutoff) {
    if (coefficients.size() > coeffs_.size())
        throw std::invalid_argument("more coefficients than cutoff allows");
    std::copy(coefficients.begin(), coefficients.end(), coeffs_.begin());
}

TruncatedSeries TruncatedSeries::one(int cutoff) {
    TruncatedSeries s(cutoff);
    s.coeffs_[0] = 1;
    return s;
}

const BigInt& TruncatedSeries::coeff(int degree) const {
    return coeffs_.at(static_cast<size_t>(degree));
}

void TruncatedSeries::set_coeff(int degree, BigInt value) {
    coeffs_.at(static_cast<size_t>(degree)) = std::move(value);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& rhs) const {
    TruncatedSeries out(std::min(cutoff_, rhs.cutoff_));
    for (int d = 0; d <= out.cutoff_; ++d)
        out.coeffs_[static_cast<size_t>(d)] = coeff(d) + rhs.coeff(d);
    return out;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& rhs) const {
    TruncatedSeries out(std::min(cutoff_, rhs.cutoff_));
    for (int d = 0; d <= out.cutoff_; ++d)
        out.coeffs_[static_cast<size_t>(d)] = coeff(d) - rhs.coeff(d);
    return out;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& rhs) const {
    TruncatedSeries out(std::min(cutoff_, rhs.cutoff_));
    for (int i = 0; i <= out.cutoff_; ++i) {
        if (coeff(i) == 0) continue;
        for (int j = 0; i + j <= out.cutoff_; ++j)
            out.coeffs_[static_cast<size_t>(i + j)] += coeff(i) * rhs.coeff(j);
    }
    return out;
}

TruncatedSeries TruncatedSeries::reciprocal() const {
    if (coeffs_[0] != 1)
        throw std::invalid_argument("reciprocal requires constant term 1");
    TruncatedSeries out(cutoff_);
    out.coeffs_[0] = 1;
    for (int n = 1; n <= cutoff_; ++n) {
        BigInt acc = 0;
        for (int i = 1; i <= n; ++i) acc += coeff(i) * out.coeffs_[static_cast<size_t>(n - i)];
        out.coeffs_[static_cast<size_t>(n)] = -acc;
    }
    return out;
}

}  // namespace wilf
