// Copyright 2026 The qisa Authors
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

#include "qisa/error.hpp"

namespace qisa {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::EmptyRegisterList:
        return "EmptyRegisterList";
    case ErrorCode::WidthExceeded:
        return "WidthExceeded";
    case ErrorCode::IndexOutOfRange:
        return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch:
        return "DimensionMismatch";
    case ErrorCode::NotUnitary:
        return "NotUnitary";
    case ErrorCode::ZeroProbabilityBranch:
        return "ZeroProbabilityBranch";
    case ErrorCode::MapDomainError:
        return "MapDomainError";
    case ErrorCode::MapRangeError:
        return "MapRangeError";
    case ErrorCode::InvalidModel:
        return "InvalidModel";
    case ErrorCode::TooLarge:
        return "TooLarge";
    case ErrorCode::ContractError:
        return "ContractError";
    case ErrorCode::LexError:
        return "LexError";
    case ErrorCode::ParseError:
        return "ParseError";
    case ErrorCode::ElaborationError:
        return "ElaborationError";
    case ErrorCode::IoError:
        return "IoError";
    case ErrorCode::UnknownCorpusName:
        return "UnknownCorpusName";
    }
    return "Unknown";
}

std::string to_string(SourcePos pos) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

} // namespace qisa
