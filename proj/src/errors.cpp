#include "latseq/errors.hpp"

namespace latseq {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotAPoset: return "NotAPoset";
        case ErrorKind::NotALattice: return "NotALattice";
        case ErrorKind::TrivialLattice: return "TrivialLattice";
        case ErrorKind::NotComparable: return "NotComparable";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::LatticeMismatch: return "LatticeMismatch";
        case ErrorKind::EmptyArgs: return "EmptyArgs";
        case ErrorKind::InconsistentTable: return "InconsistentTable";
        case ErrorKind::InvalidPresentation: return "InvalidPresentation";
        case ErrorKind::NotAProduct: return "NotAProduct";
        case ErrorKind::HasSplittingPair: return "HasSplittingPair";
        case ErrorKind::NotStrong: return "NotStrong";
        case ErrorKind::NotModular: return "NotModular";
        case ErrorKind::StronglySplits: return "StronglySplits";
        case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorKind::BadInput: return "BadInput";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotModular: return 3;
        case ErrorKind::StronglySplits: return 4;
        case ErrorKind::SearchBudgetExceeded: return 5;
        default: return 6;
    }
}

} // namespace latseq
