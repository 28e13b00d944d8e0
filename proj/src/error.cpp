#include "mobistress/error.hpp"

namespace mobistress {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainTooWide: return "DomainTooWide";
    case ErrorKind::UnknownChoice: return "UnknownChoice";
    case ErrorKind::DateOutOfTerm: return "DateOutOfTerm";
    case ErrorKind::ClassTooSmall: return "ClassTooSmall";
    case ErrorKind::BatchTooSmall: return "BatchTooSmall";
    case ErrorKind::StaleCache: return "StaleCache";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::FileMissing: return "FileMissing";
    case ErrorKind::HeaderMismatch: return "HeaderMismatch";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
  }
  return "Unknown";
}

}  // namespace mobistress
