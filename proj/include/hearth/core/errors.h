// Copyright 2026 The Hearth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HEARTH_CORE_ERRORS_H_
#define HEARTH_CORE_ERRORS_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/cord.h"

namespace hearth {

// Domain error kinds ride on absl::Status as a payload so callers can
// branch on them without parsing messages.
enum class ErrorKind {
  kNone,
  kNeedsClarification,
  kRecoveryFailure,
  kEmptyPrediction,
  kUndefinedSimilarity,
  kOrdering,
};

inline constexpr std::string_view kErrorKindUrl = "hearth/error-kind";

inline std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNone:
      return "none";
    case ErrorKind::kNeedsClarification:
      return "needs_clarification";
    case ErrorKind::kRecoveryFailure:
      return "recovery_failure";
    case ErrorKind::kEmptyPrediction:
      return "empty_prediction";
    case ErrorKind::kUndefinedSimilarity:
      return "undefined_similarity";
    case ErrorKind::kOrdering:
      return "ordering";
  }
  return "none";
}

inline absl::Status WithKind(absl::Status status, ErrorKind kind) {
  status.SetPayload(std::string(kErrorKindUrl),
                    absl::Cord(std::string(ErrorKindName(kind))));
  return status;
}

inline ErrorKind KindOf(const absl::Status& status) {
  auto payload = status.GetPayload(std::string(kErrorKindUrl));
  if (!payload.has_value()) return ErrorKind::kNone;
  const std::string name(*payload);
  for (ErrorKind k :
       {ErrorKind::kNeedsClarification, ErrorKind::kRecoveryFailure,
        ErrorKind::kEmptyPrediction, ErrorKind::kUndefinedSimilarity,
        ErrorKind::kOrdering}) {
    if (name == ErrorKindName(k)) return k;
  }
  return ErrorKind::kNone;
}

inline absl::Status NeedsClarificationError(const std::string& message) {
  return WithKind(absl::FailedPreconditionError(message),
                  ErrorKind::kNeedsClarification);
}

inline absl::Status RecoveryFailureError(const std::string& message) {
  return WithKind(absl::DataLossError(message), ErrorKind::kRecoveryFailure);
}

inline absl::Status EmptyPredictionError(const std::string& message) {
  return WithKind(absl::InvalidArgumentError(message),
                  ErrorKind::kEmptyPrediction);
}

inline absl::Status UndefinedSimilarityError(const std::string& message) {
  return WithKind(absl::InvalidArgumentError(message),
                  ErrorKind::kUndefinedSimilarity);
}

inline absl::Status OrderingError(const std::string& message) {
  return WithKind(absl::FailedPreconditionError(message),
                  ErrorKind::kOrdering);
}

}  // namespace hearth

#define HEARTH_RETURN_IF_ERROR(expr)               \
  do {                                             \
    if (::absl::Status _st = (expr); !_st.ok()) {  \
      return _st;                                  \
    }                                              \
  } while (0)

#define HEARTH_CONCAT_INNER_(a, b) a##b
#define HEARTH_CONCAT_(a, b) HEARTH_CONCAT_INNER_(a, b)

#define HEARTH_ASSIGN_OR_RETURN(lhs, expr) \
  HEARTH_ASSIGN_OR_RETURN_IMPL_(HEARTH_CONCAT_(_status_or_, __LINE__), lhs, expr)

#define HEARTH_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                  \
  if (!tmp.ok()) return tmp.status();                 \
  lhs = std::move(tmp).value()

#endif  // HEARTH_CORE_ERRORS_H_
