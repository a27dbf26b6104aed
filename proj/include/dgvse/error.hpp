// Copyright 2026 The DGVSE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DGVSE_ERROR_HPP
#define DGVSE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace dgvse {

enum class ErrorKind {
  DimensionMismatch,
  InvalidValue,
  EmptyFusionSet,
  DegenerateNaturalParams,
  NotPositiveDefinite,
  UnknownTag,
  EmptyTagSet,
  DuplicateTag,
  BatchTooSmall,
  EmptyDataset,
  ItemWithoutTags,
  InvalidConfig,
  ParseError,
  InconsistentFeatureLength,
  DuplicateId,
  EmptyTagsList,
  VersionMismatch,
  TruncatedFile,
  HeaderCorrupt,
  Io,
  UnknownId,
  InvalidQuery,
  EmptySubset,
  TooFewTags,
  TooFewItems,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::EmptyFusionSet: return "EmptyFusionSet";
    case ErrorKind::DegenerateNaturalParams: return "DegenerateNaturalParams";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::UnknownTag: return "UnknownTag";
    case ErrorKind::EmptyTagSet: return "EmptyTagSet";
    case ErrorKind::DuplicateTag: return "DuplicateTag";
    case ErrorKind::BatchTooSmall: return "BatchTooSmall";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::ItemWithoutTags: return "ItemWithoutTags";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InconsistentFeatureLength: return "InconsistentFeatureLength";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::EmptyTagsList: return "EmptyTagsList";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::TruncatedFile: return "TruncatedFile";
    case ErrorKind::HeaderCorrupt: return "HeaderCorrupt";
    case ErrorKind::Io: return "Io";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::InvalidQuery: return "InvalidQuery";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::TooFewTags: return "TooFewTags";
    case ErrorKind::TooFewItems: return "TooFewItems";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
/// Parsers attach the 1-based line number; query validation attaches the
/// offending field name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  Error(ErrorKind kind, const std::string& what, long line)
      : std::runtime_error(std::string(to_string(kind)) + " at line " +
                           std::to_string(line) + ": " + what),
        kind_(kind),
        line_(line) {}

  ErrorKind kind() const { return kind_; }
  long line() const { return line_; }

  const std::string& field() const { return field_; }
  Error& with_field(std::string field) {
    field_ = std::move(field);
    return *this;
  }

 private:
  ErrorKind kind_;
  long line_ = 0;
  std::string field_;
};

}  // namespace dgvse

#endif  // DGVSE_ERROR_HPP
