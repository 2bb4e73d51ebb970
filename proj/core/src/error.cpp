#include "hcdeval/error.hpp"

namespace hcdeval {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::DuplicateRecordId: return "DuplicateRecordId";
    case Errc::InvalidTaskName: return "InvalidTaskName";
    case Errc::MissingModelField: return "MissingModelField";
    case Errc::InvalidField: return "InvalidField";
    case Errc::UnexpectedField: return "UnexpectedField";
    case Errc::UnknownField: return "UnknownField";
    case Errc::BadMagic: return "BadMagic";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NormViolation: return "NormViolation";
    case Errc::UnknownRecordId: return "UnknownRecordId";
    case Errc::MissingEmbedding: return "MissingEmbedding";
    case Errc::EmptyVocabulary: return "EmptyVocabulary";
    case Errc::DegenerateMean: return "DegenerateMean";
    case Errc::TooFewHumans: return "TooFewHumans";
    case Errc::NoOtherImages: return "NoOtherImages";
    case Errc::NoModelVectors: return "NoModelVectors";
    case Errc::DegenerateBounds: return "DegenerateBounds";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::SingletonClass: return "SingletonClass";
    case Errc::EmptyText: return "EmptyText";
    case Errc::EmptyLexicon: return "EmptyLexicon";
    case Errc::BadEpsilon: return "BadEpsilon";
    case Errc::MissingLexicon: return "MissingLexicon";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::PoolExhausted: return "PoolExhausted";
    case Errc::EmptyTarget: return "EmptyTarget";
    case Errc::MalformedToken: return "MalformedToken";
    case Errc::MultipleRoots: return "MultipleRoots";
    case Errc::CyclicHeads: return "CyclicHeads";
    case Errc::EmptyCorpusCounts: return "EmptyCorpusCounts";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::OverlappingLexicons: return "OverlappingLexicons";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::BadP: return "BadP";
    case Errc::AllZeros: return "AllZeros";
    case Errc::DegenerateMargin: return "DegenerateMargin";
    case Errc::TooFewValues: return "TooFewValues";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::Io: return "Io";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace hcdeval
