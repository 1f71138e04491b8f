#include "takagi/bitreg.hpp"

#include <algorithm>
#include <cmath>

namespace takagi {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1) throw std::domain_error("BitString: bits must be 0 or 1");
}

BitString BitString::zeros(std::size_t depth) {
    return BitString(std::vector<std::uint8_t>(depth, 0));
}

BitString BitString::ones(std::size_t depth) {
    return BitString(std::vector<std::uint8_t>(depth, 1));
}

BitString BitString::from_value(double v, std::size_t depth) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("from_value: v outside [0,1]");
    if (depth == 0) throw std::domain_error("from_value: depth must be >= 1");
    std::vector<std::uint8_t> bits(depth);
    if (v == 1.0) return ones(depth);  // closest representable register
    for (std::size_t i = 0; i < depth; ++i) {
        v *= 2.0;
        if (v >= 1.0) {
            bits[i] = 1;
            v -= 1.0;
        }
    }
    return BitString(std::move(bits));
}

BitString BitString::parse(std::string_view s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::domain_error("parse: expected '0'/'1' string");
        bits.push_back(c == '1');
    }
    return BitString(std::move(bits));
}

double BitString::value() const {
    // Horner from the least significant end: exact for depth <= 53.
    double r = 0.0;
    for (std::size_t i = bits_.size(); i-- > 0;) r = (r + bits_[i]) * 0.5;
    return r;
}

std::string BitString::str() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

BitString BitString::dropped(std::size_t k) const {
    if (k > bits_.size()) throw PrecisionError("dropped: register exhausted");
    return BitString(std::vector<std::uint8_t>(bits_.begin() + static_cast<long>(k), bits_.end()));
}

BitString BitString::pushed(int b) const {
    std::vector<std::uint8_t> v;
    v.reserve(bits_.size() + 1);
    v.push_back(b ? 1 : 0);
    v.insert(v.end(), bits_.begin(), bits_.end());
    return BitString(std::move(v));
}

BitString meet(const BitString& x, const BitString& y) {
    if (x.depth() != y.depth()) throw std::domain_error("meet: depth mismatch");
    std::vector<std::uint8_t> v(x.depth());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.bit(i) & y.bit(i);
    return BitString(std::move(v));
}

double tent(double v) {
    double f = v - std::floor(v);
    return std::min(f, 1.0 - f);
}

double tent_slope(double v) {
    double f = v - std::floor(v);
    return f < 0.5 ? 1.0 : -1.0;
}

Phase baker(const Phase& p, long long k) {
    if (k >= 0) {
        if (static_cast<std::size_t>(k) > p.valid_forward())
            throw PrecisionError("baker: forward budget exhausted");
    } else {
        if (static_cast<std::size_t>(-k) > p.valid_backward())
            throw PrecisionError("baker: backward budget exhausted");
    }
    Phase q = p;
    for (long long i = 0; i < k; ++i) {
        int b = q.xi.bit(0);
        q.xi = q.xi.dropped(1);
        q.x = q.x.pushed(b);
    }
    for (long long i = 0; i > k; --i) {
        int b = q.x.bit(0);
        q.x = q.x.dropped(1);
        q.xi = q.xi.pushed(b);
    }
    return q;
}

}  // namespace takagi
