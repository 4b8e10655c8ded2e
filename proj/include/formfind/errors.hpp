#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace formfind {

// Exit-code categories: usage errors -> 1, data errors -> 2, numeric failures -> 3.
struct FormfindError : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 3; }
};

struct UsageError : FormfindError {
    using FormfindError::FormfindError;
    int exit_code() const override { return 1; }
};

struct DataError : FormfindError {
    using FormfindError::FormfindError;
    int exit_code() const override { return 2; }
};

struct NumericError : FormfindError {
    using FormfindError::FormfindError;
    int exit_code() const override { return 3; }
};

struct ZeroVariance : DataError {
    ZeroVariance() : DataError("zero variance: constant column") {}
    explicit ZeroVariance(const std::string& what) : DataError(what) {}
};

struct NonFinite : DataError {
    explicit NonFinite(const std::string& what = "non-finite value in input") : DataError(what) {}
};

struct EmptyPartition : DataError {
    explicit EmptyPartition(const std::string& what = "split leaves a partition with fewer than 2 rows")
        : DataError(what) {}
};

struct LengthMismatch : DataError {
    explicit LengthMismatch(const std::string& what = "vector length mismatch") : DataError(what) {}
};

struct UnitMismatch : DataError {
    explicit UnitMismatch(const std::string& what = "unit mismatch") : DataError(what) {}
};

// Rows where an expression is undefined (fractional power of a negative base,
// division by zero, log of a non-positive value, overflow).
struct DomainViolation : NumericError {
    std::vector<std::size_t> rows;
    explicit DomainViolation(std::vector<std::size_t> bad_rows)
        : NumericError("expression undefined on " + std::to_string(bad_rows.size()) + " row(s)"),
          rows(std::move(bad_rows)) {}
};

struct ParseError : DataError {
    std::size_t position;
    std::string expected;
    ParseError(std::size_t pos, const std::string& expected_tokens)
        : DataError("parse error at position " + std::to_string(pos) + ": expected " + expected_tokens),
          position(pos),
          expected(expected_tokens) {}
};

struct LibraryTooLarge : UsageError {
    LibraryTooLarge(std::uint64_t count, std::uint64_t cap)
        : UsageError("candidate library would hold " + std::to_string(count) + " entries (cap " +
                     std::to_string(cap) + "); restrict families, grids or arity") {}
};

struct DegenerateRegressor : NumericError {
    DegenerateRegressor() : NumericError("regressor has zero energy") {}
};

struct NoFeasibleFit : NumericError {
    NoFeasibleFit() : NumericError("no feasible (a, b2) pair on the grid") {}
};

struct ZeroScale : NumericError {
    ZeroScale() : NumericError("max of peel candidate is zero") {}
};

struct DuplicateFeature : UsageError {
    DuplicateFeature() : UsageError("duplicate expressions in feature set") {}
};

struct DivergenceDetected : NumericError {
    DivergenceDetected() : NumericError("training loss became non-finite") {}
};

struct IllConditioned : NumericError {
    explicit IllConditioned(double cond)
        : NumericError("normal equations condition number " + std::to_string(cond) + " exceeds limit") {}
};

}  // namespace formfind
