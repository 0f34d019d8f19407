#pragma once

#include <stdexcept>
#include <string>

namespace latseq {

/// Every failure mode of the library, named. The CLI maps kinds to exit codes
/// (see exit_code below); witnesses ride along in the message text.
enum class ErrorKind {
    NotAPoset,
    NotALattice,
    TrivialLattice,
    NotComparable,
    UnknownName,
    DimensionMismatch,
    LatticeMismatch,
    EmptyArgs,
    InconsistentTable,
    InvalidPresentation,
    NotAProduct,
    HasSplittingPair,
    NotStrong,
    NotModular,
    StronglySplits,
    SearchBudgetExceeded,
    BadInput,
};

const char* to_string(ErrorKind kind);

/// Exit code used by the CLI: 3 = NotModular, 4 = StronglySplits,
/// 5 = SearchBudgetExceeded, 6 = everything else (usage errors are 2).
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace latseq
