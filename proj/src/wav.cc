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

#include "spikevox/wav.h"

#include "spikevox/common.h"

namespace spikevox {

namespace {

uint32_t Le32(std::string_view b, size_t off) {
  return static_cast<uint32_t>(static_cast<uint8_t>(b[off])) |
         static_cast<uint32_t>(static_cast<uint8_t>(b[off + 1])) << 8 |
         static_cast<uint32_t>(static_cast<uint8_t>(b[off + 2])) << 16 |
         static_cast<uint32_t>(static_cast<uint8_t>(b[off + 3])) << 24;
}

uint16_t Le16(std::string_view b, size_t off) {
  return static_cast<uint16_t>(static_cast<uint8_t>(b[off]) |
                               static_cast<uint8_t>(b[off + 1]) << 8);
}

void Put32(std::string* s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void Put16(std::string* s, uint16_t v) {
  s->push_back(static_cast<char>(v & 0xff));
  s->push_back(static_cast<char>(v >> 8));
}

}  // namespace

WavInfo ValidateWav(std::string_view b) {
  if (b.size() < 12 || b.substr(0, 4) != "RIFF" || b.substr(8, 4) != "WAVE") {
    throw ValidationError("audio is not a RIFF/WAVE file");
  }
  WavInfo info;
  bool have_fmt = false, have_data = false;
  size_t off = 12;
  while (off + 8 <= b.size()) {
    std::string_view id = b.substr(off, 4);
    uint32_t size = Le32(b, off + 4);
    size_t body = off + 8;
    if (id == "fmt ") {
      if (size < 16 || body + 16 > b.size()) {
        throw ValidationError("truncated fmt chunk");
      }
      uint16_t format = Le16(b, body);
      info.channels = Le16(b, body + 2);
      info.sample_rate = static_cast<int>(Le32(b, body + 4));
      info.bits_per_sample = Le16(b, body + 14);
      if (format != 1) throw ValidationError("audio must be PCM");
      have_fmt = true;
    } else if (id == "data") {
      info.data_bytes = size;
      have_data = true;
      break;
    }
    off = body + size + (size & 1);
  }
  if (!have_fmt || !have_data) throw ValidationError("WAV lacks fmt or data chunk");
  if (info.channels != 1 || info.sample_rate != 16000 ||
      info.bits_per_sample != 16) {
    throw ValidationError("audio must be PCM16 mono 16 kHz");
  }
  return info;
}

std::string MakeSilentWav(int samples) {
  uint32_t data = static_cast<uint32_t>(samples) * 2;
  std::string s = "RIFF";
  Put32(&s, 36 + data);
  s += "WAVEfmt ";
  Put32(&s, 16);
  Put16(&s, 1);
  Put16(&s, 1);
  Put32(&s, 16000);
  Put32(&s, 32000);
  Put16(&s, 2);
  Put16(&s, 16);
  s += "data";
  Put32(&s, data);
  s.append(data, '\0');
  return s;
}

}  // namespace spikevox
