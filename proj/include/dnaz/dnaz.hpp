/**
 * Copyright 2026 The dnaz Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header. The network client lives in dnaz/genbank_client.hpp and is
// not pulled in here.
#pragma once

#include "dnaz/analysis.hpp"
#include "dnaz/cipher.hpp"
#include "dnaz/dna_codec.hpp"
#include "dnaz/error.hpp"
#include "dnaz/image_io.hpp"
#include "dnaz/keystore.hpp"
#include "dnaz/report.hpp"
#include "dnaz/zigzag.hpp"
