#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace takagi {

// Thrown when an operation would have to read bits beyond the certified
// register depth. Registers never silently zero-pad.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// A point of [0,1] as a certified prefix of its binary expansion,
// MSB first: value = sum bits[i] * 2^-(i+1). Dyadic rationals use the
// terminating (trailing-zeros) expansion.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);

    static BitString zeros(std::size_t depth);
    static BitString ones(std::size_t depth);
    static BitString from_value(double v, std::size_t depth);
    // "0101..." MSB first; this is also the JSON serialization.
    static BitString parse(std::string_view s);

    double value() const;
    std::size_t depth() const { return bits_.size(); }
    int bit(std::size_t i) const { return bits_[i]; }
    void set_bit(std::size_t i, int b) { bits_[i] = b ? 1 : 0; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::string str() const;

    // Register with the first k bits removed (value 2^k * x mod 1).
    BitString dropped(std::size_t k) const;
    // Register with bit b pushed in front (value (b + x) / 2).
    BitString pushed(int b) const;

    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

// Bitwise AND of two equal-depth registers.
BitString meet(const BitString& x, const BitString& y);

// distance to the nearest integer, in [0, 1/2]
double tent(double v);
// slope of tent on the half containing frac(v): +1 on [0,1/2), -1 on [1/2,1).
// Right-continuous at the breakpoints.
double tent_slope(double v);

// A point of the pair space [0,1]^2. xi is the backward register (bits
// xi_0, xi_-1, ... MSB first), x the forward one (bits x_1, x_2, ...).
// Budgets are the register depths: each forward baker step consumes one
// xi bit, each backward step one x bit.
struct Phase {
    BitString xi;
    BitString x;

    std::size_t valid_forward() const { return xi.depth(); }
    std::size_t valid_backward() const { return x.depth(); }

    bool operator==(const Phase&) const = default;
};

// k-fold baker transform as an exact register shift. Throws PrecisionError
// when |k| exceeds the corresponding budget.
Phase baker(const Phase& p, long long k);

}  // namespace takagi
