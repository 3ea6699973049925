#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gridsat {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt binomial(int n, int j) {
    if (j < 0 || j > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < j; ++i) {
        r *= (n - i);
        r /= (i + 1);  // exact: product of i+1 consecutive integers
    }
    return r;
}

// b^e with the 0^0 = 1 convention used throughout the counting formulas
inline BigInt ipow(const BigInt& b, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

inline BigInt ipow(int b, int e) { return ipow(BigInt(b), e); }

}  // namespace gridsat
