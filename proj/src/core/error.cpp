#include "legis/core/error.hpp"

namespace legis {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::MissingIdentifier: return "MissingIdentifier";
    case ErrorCode::UnparsableHref: return "UnparsableHref";
    case ErrorCode::ManifestNotFound: return "ManifestNotFound";
    case ErrorCode::EmptyDraft: return "EmptyDraft";
    case ErrorCode::NodeNotFound: return "NodeNotFound";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::Frozen: return "Frozen";
    case ErrorCode::NotFrozen: return "NotFrozen";
    case ErrorCode::NoLetters: return "NoLetters";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyIndex: return "EmptyIndex";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::GatewayError: return "GatewayError";
    case ErrorCode::UnknownTemplate: return "UnknownTemplate";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnparsableOutput: return "UnparsableOutput";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyTopics: return "EmptyTopics";
    case ErrorCode::EmptyComparisonSet: return "EmptyComparisonSet";
    case ErrorCode::InvalidRange: return "InvalidRange";
    }
    return "Unknown";
}

} // namespace legis
