// Copyright (c) 2026 The SpikeVox Authors
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

#ifndef SPIKEVOX_WAV_H_
#define SPIKEVOX_WAV_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace spikevox {

struct WavInfo {
  int channels = 0;
  int sample_rate = 0;
  int bits_per_sample = 0;
  uint32_t data_bytes = 0;
};

// Parses a RIFF/WAVE header and requires PCM16 mono 16 kHz, the format
// the recognizer bridge accepts. Throws ValidationError.
WavInfo ValidateWav(std::string_view bytes);

// Minimal PCM16 mono 16 kHz file holding `samples` zero samples.
std::string MakeSilentWav(int samples);

}  // namespace spikevox

#endif  // SPIKEVOX_WAV_H_
