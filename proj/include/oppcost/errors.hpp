#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oppcost {

/// Malformed or out-of-contract input (bad file, bad flag, violated precondition).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Edge-list text that cannot be turned into a Graph. Carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Exhaustive enumeration refused because the instance exceeds the configured bound.
class TooLargeError : public InputError {
public:
    using InputError::InputError;
};

/// Well-formed input with no solution: no path, disconnected graph, no convergence.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoPathError : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

class DisconnectedError : public InfeasibleError {
public:
    DisconnectedError(std::string u, std::string v)
        : InfeasibleError("graph is disconnected: no path between '" + u + "' and '" + v + "'"),
          u_(std::move(u)), v_(std::move(v)) {}

    const std::string& first() const noexcept { return u_; }
    const std::string& second() const noexcept { return v_; }

private:
    std::string u_, v_;
};

/// The myopic walk reached a vertex with no unvisited neighbour before the target.
class GreedyStuckError : public InfeasibleError {
public:
    GreedyStuckError(std::vector<std::string> partial, const std::string& what)
        : InfeasibleError(what), partial_(std::move(partial)) {}

    const std::vector<std::string>& partial_path() const noexcept { return partial_; }

private:
    std::vector<std::string> partial_;
};

/// Some grid point admits no strictly positive consumption.
class GridConfigError : public InputError {
public:
    using InputError::InputError;
};

class NonConvergenceError : public InfeasibleError {
public:
    NonConvergenceError(double residual, std::size_t iterations)
        : InfeasibleError("value iteration did not converge after " + std::to_string(iterations) +
                          " iterations (last residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace oppcost
