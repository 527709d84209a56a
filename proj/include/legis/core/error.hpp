#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace legis {

enum class ErrorCode {
    InvalidArgument,
    IoError,
    // corpus-ingest
    MalformedXml,
    MissingIdentifier,
    UnparsableHref,
    ManifestNotFound,
    EmptyDraft,
    // graph-store
    NodeNotFound,
    KindMismatch,
    VersionMismatch,
    CorruptSnapshot,
    Frozen,
    NotFrozen,
    // text-metrics
    NoLetters,
    EmptyText,
    // vector-index
    DimensionMismatch,
    DuplicateId,
    EmptyIndex,
    // llm-gateway
    BackendUnavailable,
    Timeout,
    GatewayError,
    UnknownTemplate,
    UnboundVariable,
    UnparsableOutput,
    // pipelines
    EmptyInput,
    EmptyTopics,
    EmptyComparisonSet,
    InvalidRange,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace legis
