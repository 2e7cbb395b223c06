#pragma once

// Standard MIDI File (format 0/1) reader. Tempo is ignored: time is kept in
// ticks and converted to quarter lengths through the header division.

#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "scoregraph/error.hpp"
#include "scoregraph/score.hpp"

namespace scoregraph {

namespace midi_detail {

class ByteReader {
 public:
  ByteReader(std::string_view data, std::size_t pos, std::size_t end) : data_(data), pos_(pos), end_(end) {}

  bool done() const { return pos_ >= end_; }
  std::size_t pos() const { return pos_; }

  std::uint8_t u8() {
    if (pos_ >= end_) throw Error(ErrorKind::MalformedFile, "unexpected end of MIDI data");
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint8_t peek() const {
    if (pos_ >= end_) throw Error(ErrorKind::MalformedFile, "unexpected end of MIDI data");
    return static_cast<std::uint8_t>(data_[pos_]);
  }
  std::uint32_t be(int bytes) {
    std::uint32_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | u8();
    return v;
  }
  std::uint32_t vlq() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint8_t b = u8();
      v = (v << 7) | (b & 0x7F);
      if ((b & 0x80) == 0) return v;
    }
    throw Error(ErrorKind::MalformedFile, "variable-length quantity longer than 4 bytes");
  }
  void skip(std::size_t n) {
    if (end_ - pos_ < n) throw Error(ErrorKind::MalformedFile, "chunk data runs past end of file");
    pos_ += n;
  }

 private:
  std::string_view data_;
  std::size_t pos_;
  std::size_t end_;
};

struct TimeSignature {
  std::uint64_t tick;
  Rational measure_length;  // quarter lengths
};

}  // namespace midi_detail

inline ScoreData parse_midi(std::string_view raw) {
  using namespace midi_detail;
  if (raw.size() < 14 || raw.substr(0, 4) != "MThd") throw Error(ErrorKind::MalformedFile, "missing MThd header");
  ByteReader header(raw, 4, raw.size());
  const std::uint32_t header_len = header.be(4);
  if (header_len < 6) throw Error(ErrorKind::MalformedFile, "MThd chunk too short");
  const std::uint32_t format = header.be(2);
  const std::uint32_t track_count = header.be(2);
  const std::uint32_t division = header.be(2);
  if (format > 1) throw Error(ErrorKind::UnsupportedFeature, "MIDI format " + std::to_string(format));
  if (division & 0x8000) throw Error(ErrorKind::UnsupportedFeature, "SMPTE time division");
  if (division == 0) throw Error(ErrorKind::MalformedFile, "zero ticks per quarter");
  const auto to_ql = [division](std::uint64_t ticks) {
    return Rational(static_cast<std::int64_t>(ticks), static_cast<std::int64_t>(division));
  };

  ScoreData out;
  std::vector<TimeSignature> signatures;
  std::uint64_t end_tick = 0;
  std::size_t pos = 8 + header_len;

  for (std::uint32_t track = 0; track < track_count; ++track) {
    if (raw.size() < pos + 8) throw Error(ErrorKind::MalformedFile, "missing track chunk " + std::to_string(track));
    ByteReader chunk(raw, pos + 4, raw.size());
    const std::uint32_t len = chunk.be(4);
    if (raw.substr(pos, 4) != "MTrk") {
      pos += 8 + len;  // unknown chunk types are skipped per the SMF spec
      --track;
      continue;
    }
    if (raw.size() < pos + 8 + len) throw Error(ErrorKind::MalformedFile, "track chunk runs past end of file");
    ByteReader r(raw, pos + 8, pos + 8 + len);
    pos += 8 + len;

    std::uint64_t tick = 0;
    std::uint8_t running = 0;
    // (channel, pitch) -> onset ticks of notes still sounding, oldest first
    std::map<std::pair<int, int>, std::deque<std::uint64_t>> sounding;
    auto close_note = [&](int channel, int pitch, std::uint64_t at) {
      auto it = sounding.find({channel, pitch});
      if (it == sounding.end() || it->second.empty()) return;
      const std::uint64_t start = it->second.front();
      it->second.pop_front();
      if (at == start) {
        out.warnings.push_back({"ZeroDurationDropped", "zero-length note " + std::to_string(pitch)});
        return;
      }
      const int part = format == 0 ? channel : static_cast<int>(track);
      out.notes.push_back(TimedNote{to_ql(start), to_ql(at - start), pitch, part});
    };

    while (!r.done()) {
      tick += r.vlq();
      std::uint8_t status = r.peek();
      if (status & 0x80) {
        r.u8();
        if (status < 0xF0) running = status;
      } else {
        if (running == 0) throw Error(ErrorKind::MalformedFile, "data byte without running status");
        status = running;
      }

      if (status == 0xFF) {
        const std::uint8_t type = r.u8();
        const std::uint32_t mlen = r.vlq();
        if (type == 0x58 && mlen >= 2) {
          const std::uint8_t num = r.u8();
          const std::uint8_t den_pow = r.u8();
          r.skip(mlen - 2);
          if (num == 0 || den_pow > 6) throw Error(ErrorKind::MalformedFile, "bad time signature");
          signatures.push_back({tick, Rational(num * 4, 1 << den_pow)});
        } else {
          r.skip(mlen);
        }
        if (type == 0x2F) break;
        continue;
      }
      if (status == 0xF0 || status == 0xF7) {
        r.skip(r.vlq());
        continue;
      }
      if (status >= 0xF0) throw Error(ErrorKind::MalformedFile, "unexpected system message in track");

      const int kind = status & 0xF0;
      const int channel = status & 0x0F;
      const bool two_data = kind != 0xC0 && kind != 0xD0;
      const int d1 = r.u8();
      const int d2 = two_data ? r.u8() : 0;
      if (d1 > 127 || d2 > 127) throw Error(ErrorKind::MalformedFile, "data byte out of range");
      if (kind == 0x90 && d2 > 0) {
        sounding[{channel, d1}].push_back(tick);
      } else if (kind == 0x80 || kind == 0x90) {
        close_note(channel, d1, tick);
      }
    }

    for (auto& [key, starts] : sounding) {
      while (!starts.empty()) {
        out.warnings.push_back({"UnmatchedNoteOn", "note " + std::to_string(key.second) + " on channel " +
                                                       std::to_string(key.first) + " truncated at end of track " +
                                                       std::to_string(track)});
        close_note(key.first, key.second, tick);
      }
    }
    end_tick = std::max(end_tick, tick);
  }

  std::stable_sort(out.notes.begin(), out.notes.end(), [](const TimedNote& a, const TimedNote& b) {
    return std::tie(a.onset, a.part_index, a.pitch) < std::tie(b.onset, b.part_index, b.pitch);
  });

  // Measure grid from time signatures (4/4 until the first one). A change
  // that falls inside a measure takes effect at the next barline.
  std::stable_sort(signatures.begin(), signatures.end(),
                   [](const TimeSignature& a, const TimeSignature& b) { return a.tick < b.tick; });
  Rational end = to_ql(end_tick);
  for (const auto& n : out.notes) end = std::max(end, n.offset());
  Rational bar{0};
  Rational length{4};
  std::size_t next_sig = 0;
  while (bar < end || out.measure_onsets.empty()) {
    while (next_sig < signatures.size() && to_ql(signatures[next_sig].tick) <= bar) {
      length = signatures[next_sig].measure_length;
      ++next_sig;
    }
    out.measure_onsets.push_back(bar);
    bar += length;
  }
  out.end = bar;
  return out;
}

}  // namespace scoregraph
