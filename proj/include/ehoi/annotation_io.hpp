#pragma once

#include <string>
#include <string_view>

#include "ehoi/annotation.hpp"

namespace ehoi {

/// Parses a UTF-8 annotation document into a validated DatasetIndex.
///
/// Structural problems raise SyntaxError (not JSON), SchemaError
/// (missing/extra/mistyped field, bad enum, duplicate id) or
/// ReferentialError (active_object pointing at a missing instance).
/// Data-level invariant violations (out-of-bounds boxes, contact
/// inconsistencies, ...) parse fine and are reported by validate_frame.
DatasetIndex parse_dataset(std::string_view text);

/// Canonical serialization: keys sorted, frames sorted by frame_id, reals
/// printed with 9 significant digits. A canonical document is a fixed point
/// of parse + serialize, byte for byte.
std::string serialize_dataset(const DatasetIndex& index);

/// %.9g real formatting shared by every text emitter.
std::string format_real(double v);

DatasetIndex load_dataset_file(const std::string& path);
void save_dataset_file(const DatasetIndex& index, const std::string& path);

}  // namespace ehoi
