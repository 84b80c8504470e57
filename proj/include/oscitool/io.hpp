// Copyright 2026 The oscitool Authors.
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

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "oscitool/hermite.hpp"
#include "oscitool/modspace.hpp"

namespace osc {

using Json = nlohmann::json;

/// {dim, trunc, entries: [{alpha: [...], re, im}]}; zero entries are kept so
/// the file lists the whole simplex.
Json to_json(const HermiteCoeffs& c);
/// Missing entries read as zero. Schema errors throw DomainError naming the
/// offending field path.
HermiteCoeffs coeffs_from_json(const Json& j);

/// {dim, axes: [{nodes, weights}], re: [...], im: [...]}, values row-major.
Json to_json(const GridFunction& f);
GridFunction grid_from_json(const Json& j);

/// {dim, x_nodes, xi_nodes, window, re: [[...]], im: [[...]]}; rows index x.
Json to_json(const StftMatrix& s);
StftMatrix stft_from_json(const Json& j);

Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace osc
