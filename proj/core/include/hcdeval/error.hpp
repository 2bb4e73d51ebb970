#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcdeval {

// Every failure the library reports carries one of these codes so callers
// (the CLI in particular) can aggregate and map them to exit statuses.
enum class Errc {
  // corpus
  MalformedLine,
  DuplicateRecordId,
  InvalidTaskName,
  MissingModelField,
  InvalidField,
  UnexpectedField,
  UnknownField,
  // embedstore
  BadMagic,
  DimMismatch,
  TruncatedFile,
  NonFiniteValue,
  ZeroVector,
  NormViolation,
  UnknownRecordId,
  MissingEmbedding,
  EmptyVocabulary,
  // calibration
  DegenerateMean,
  TooFewHumans,
  NoOtherImages,
  NoModelVectors,
  DegenerateBounds,
  // geometry
  RankDeficient,
  SingletonClass,
  // textmetrics
  EmptyText,
  EmptyLexicon,
  BadEpsilon,
  MissingLexicon,
  // lexmatch
  EmptyCorpus,
  PoolExhausted,
  EmptyTarget,
  // syntax
  MalformedToken,
  MultipleRoots,
  CyclicHeads,
  EmptyCorpusCounts,
  ZeroDenominator,
  OverlappingLexicons,
  // stats
  EmptyInput,
  BadP,
  AllZeros,
  DegenerateMargin,
  TooFewValues,
  // report / io
  SchemaMismatch,
  Io,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hcdeval
