/*
 * Copyright 2026 pmdskit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

namespace pmds {

inline constexpr const char* kToolName = "pmdskit";
inline constexpr const char* kToolVersion = "0.1.0";

// Name + version of the deterministic generator; recorded in manifests so
// that archived results stay reproducible if the generator ever changes.
inline constexpr const char* kRngName = "xoshiro256ss-v1";

inline constexpr int kFileFormatVersion = 1;

}  // namespace pmds
