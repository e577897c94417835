// Copyright 2026 The qkdrep Authors
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

// JSON serialization of SystemParams.

#pragma once

#include <string>

#include "json.hpp"
#include "qkdrep/components/params.hpp"

namespace qkdrep {

void to_json(nlohmann::json& j, const SystemParams& params);

// Reads the keys present in j on top of the current values; unknown keys are
// rejected with ParamError.
void update_from_json(SystemParams& params, const nlohmann::json& j);

// Applies a single key=value override, parsing the value for the key's type.
void set_param(SystemParams& params, const std::string& key, const std::string& value);

}  // namespace qkdrep
