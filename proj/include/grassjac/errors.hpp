#pragma once

#include <stdexcept>
#include <string>

namespace grassjac {

// Exit-code contract of the command line tool; library errors carry the
// matching category so the CLI can translate uniformly.
enum class ErrorCode : int {
    ok = 0,
    oracle_mismatch = 2,     // dimension oracle or multi-prime certification failed
    hypothesis_violation = 3, // a theorem precondition gate refused the run
    equivalence_violation = 4, // a theorem-level assertion failed on data
    internal_inconsistency = 5, // e.g. a chart solve that must succeed did not
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct OracleMismatchError : Error {
    explicit OracleMismatchError(const std::string& what) : Error(ErrorCode::oracle_mismatch, what) {}
};

struct UnluckyPrimeError : Error {
    explicit UnluckyPrimeError(const std::string& what)
        : Error(ErrorCode::oracle_mismatch, "unlucky prime: " + what) {}
};

struct HypothesisError : Error {
    explicit HypothesisError(const std::string& what) : Error(ErrorCode::hypothesis_violation, what) {}
};

struct InconsistencyError : Error {
    explicit InconsistencyError(const std::string& what)
        : Error(ErrorCode::internal_inconsistency, what) {}
};

} // namespace grassjac
