#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmoments {

// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroConstantTerm : public error {
public:
    ZeroConstantTerm() : error("series has zero constant term") {}
};

class NonInvertible : public error {
public:
    explicit NonInvertible(const std::string& what) : error(what) {}
};

class NonInvertibleDenominator : public error {
public:
    NonInvertibleDenominator(std::size_t index, std::uint64_t modulus)
        : error("denominator at q^" + std::to_string(index) + " is not invertible mod " +
                std::to_string(modulus)),
          index_(index),
          modulus_(modulus) {}

    std::size_t index() const noexcept { return index_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

private:
    std::size_t index_;
    std::uint64_t modulus_;
};

class InvalidOffset : public error {
public:
    explicit InvalidOffset(long offset)
        : error("product factor offset must be >= 1, got " + std::to_string(offset)) {}
};

class ZRangeOverflow : public error {
public:
    ZRangeOverflow(std::size_t row, long zexp)
        : error("z-exponent " + std::to_string(zexp) + " outside the admissible range of row " +
                std::to_string(row)) {}
};

class UndefinedStatistic : public error {
public:
    explicit UndefinedStatistic(const std::string& what) : error(what) {}
};

class DivisibilityViolation : public error {
public:
    explicit DivisibilityViolation(const std::string& what) : error(what) {}
};

class WindowTooSmall : public error {
public:
    WindowTooSmall(std::size_t window, std::size_t needed)
        : error("solve window of " + std::to_string(window) + " rows, need at least " +
                std::to_string(needed)) {}
};

class Inconsistent : public error {
public:
    explicit Inconsistent(std::size_t first_index)
        : error("no exact solution; first failing index q^" + std::to_string(first_index)),
          first_index_(first_index) {}

    std::size_t first_index() const noexcept { return first_index_; }

private:
    std::size_t first_index_;
};

class RankDeficient : public error {
public:
    RankDeficient(std::size_t rank, std::size_t cols)
        : error("basis has rank " + std::to_string(rank) + " < " + std::to_string(cols) +
                " columns; coefficients are not unique") {}
};

class OddWeight : public error {
public:
    explicit OddWeight(long weight) : error("weight must be even, got " + std::to_string(weight)) {}
};

class BasisDependent : public error {
public:
    explicit BasisDependent(long weight)
        : error("constructed basis of weight " + std::to_string(weight) + " is linearly dependent") {}
};

class DimensionMismatch : public error {
public:
    DimensionMismatch(std::size_t got, std::size_t expected)
        : error("span dimension " + std::to_string(got) + " differs from formula value " +
                std::to_string(expected)) {}
};

class CoefficientMismatch : public error {
public:
    CoefficientMismatch(const std::string& label, const std::string& got, const std::string& expected)
        : error("coefficient of " + label + " is " + got + ", expected " + expected) {}
};

class NotInSpace : public error {
public:
    explicit NotInSpace(std::size_t first_index)
        : error("target is not in the span; residual first nonzero at q^" + std::to_string(first_index)),
          first_index_(first_index) {}

    std::size_t first_index() const noexcept { return first_index_; }

private:
    std::size_t first_index_;
};

class ParseError : public error {
public:
    explicit ParseError(const std::string& what) : error(what) {}
};

} // namespace qmoments
