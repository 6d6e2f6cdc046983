// Copyright 2026 The chargelearn Authors
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

#ifndef CHARGELEARN_CIRCUIT_IO_H
#define CHARGELEARN_CIRCUIT_IO_H

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chargelearn/circuit.h"

namespace chargelearn {

inline constexpr std::string_view kCircuitFormatName = "chargelearn.circuit";
inline constexpr int kCircuitFormatVersion = 1;

/// Malformed circuit document. `position()` is a byte offset into the document when the
/// problem is syntactic, or npos when it is a schema violation (the message names the field).
class FormatError : public std::runtime_error {
   public:
    FormatError(const std::string &message, size_t position)
        : std::runtime_error(message), position_(position) {
    }
    size_t position() const {
        return position_;
    }

   private:
    size_t position_;
};

class VersionError : public FormatError {
   public:
    VersionError(const std::string &message, int version) : FormatError(message, std::string::npos), version_(version) {
    }
    int version() const {
        return version_;
    }

   private:
    int version_;
};

/// JSON text with a fixed field order, one gate per line, and every angle printed with 17
/// significant digits, so serialize(deserialize(serialize(s))) is byte-identical to serialize(s).
std::string serialize_circuit(const CircuitSpec &spec);

/// Parses and validates a circuit document. Throws FormatError or VersionError.
CircuitSpec deserialize_circuit(std::string_view text);

void save_circuit(const CircuitSpec &spec, const std::filesystem::path &path);
/// Throws std::runtime_error naming the path when the file cannot be read.
CircuitSpec load_circuit(const std::filesystem::path &path);

/// Reads a whole file into memory; throws std::runtime_error naming the path on failure.
std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view contents);

/// printf("%.17g").
std::string format_double(double value);

}  // namespace chargelearn

#endif
