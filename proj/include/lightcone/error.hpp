#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lightcone {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Björling data or a matrix failed a structural check (Hermitian, conformal,
// orientable).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Input lies outside the domain of an operation (e.g. a point not in Q3+).
class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
        : Error(what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::complex<double> at) : Error(what), at_(at) {}
    std::complex<double> at() const noexcept { return at_; }

private:
    std::complex<double> at_;
};

class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, std::complex<double> at) : Error(what), at_(at) {}
    std::complex<double> at() const noexcept { return at_; }

private:
    std::complex<double> at_;
};

// Step size fell below the floor while trying to meet the local tolerance.
class StiffnessError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

// The two extraction routes for the Weierstrass data disagree.
class DataInconsistencyError : public Error {
public:
    DataInconsistencyError(const std::string& what, double worst_u, double worst)
        : Error(what), worst_u_(worst_u), worst_(worst) {}
    double worst_u() const noexcept { return worst_u_; }
    double worst() const noexcept { return worst_; }

private:
    double worst_u_;
    double worst_;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace lightcone
