#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace primlat {

// Precondition violations on inputs. The CLI maps these to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSquare : InputError {
    NotSquare() : InputError("matrix is not square") {}
};
struct RankDeficient : InputError {
    RankDeficient() : InputError("matrix does not have full row rank") {}
};
struct NotCompletable : InputError {
    NotCompletable() : InputError("row span is not primitive; no unimodular completion") {}
};
struct ZeroVector : InputError {
    ZeroVector() : InputError("zero vector") {}
};
struct NotUnimodular : InputError {
    NotUnimodular() : InputError("matrix is not in SL (determinant != 1)") {}
};
struct NotPrimitive : InputError {
    NotPrimitive() : InputError("matrix is not k-primitive") {}
};
struct NotInvertible : InputError {
    NotInvertible() : InputError("matrix is not invertible modulo k") {}
};
struct Singular : InputError {
    Singular() : InputError("matrix is singular") {}
};
struct EmptyFamily : InputError {
    EmptyFamily() : InputError("empty lattice family") {}
};
struct SpaceMismatch : InputError {
    SpaceMismatch() : InputError("empirical measure lives on a different space") {}
};
struct NotTwoDim : InputError {
    NotTwoDim() : InputError("operation requires a two-dimensional lattice") {}
};
struct DegenerateProjection : InputError {
    DegenerateProjection() : InputError("projected basis vectors are dependent") {}
};

// Enumeration limits. CLI maps these to exit code 3.
struct BudgetExceeded : std::runtime_error {
    std::uint64_t required;
    std::uint64_t budget;
    BudgetExceeded(std::uint64_t req, std::uint64_t bud)
        : std::runtime_error("enumeration budget exceeded: requires " + std::to_string(req) +
                             " items, budget is " + std::to_string(bud)),
          required(req), budget(bud) {}
};
struct FactoringBudgetExceeded : std::runtime_error {
    FactoringBudgetExceeded()
        : std::runtime_error("factoring budget exceeded") {}
};

}  // namespace primlat
