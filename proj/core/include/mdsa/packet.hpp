#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdsa/topology.hpp"

namespace mdsa {

using Bytes = std::vector<std::uint8_t>;

// Freshness marker carried by every packet. Stored and rendered, never toggled.
enum class Flag : std::uint8_t { Old = 0, Updated = 1 };

// The four-field protocol datum: source id, sensed payload, remaining hop
// budget and freshness flag.
struct Packet {
  NodeId source_id = 0;
  Bytes payload;
  std::uint32_t hop_count = 0;
  Flag flag = Flag::Old;

  friend bool operator==(const Packet&, const Packet&) = default;
};

// "src=<id> hops=<h> flag=<f> len=<bytes>"
std::string to_string(const Packet& p);

enum class StoreResult { Stored, Duplicate, Full };

std::string_view to_string(StoreResult r);

// Fixed-capacity packet store holding at most one packet per source.
class Buffer {
 public:
  explicit Buffer(std::size_t capacity);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return slots_.size(); }
  std::size_t free_slots() const noexcept { return capacity_ - slots_.size(); }
  bool full() const noexcept { return slots_.size() >= capacity_; }
  bool empty() const noexcept { return slots_.empty(); }
  bool contains(NodeId source) const noexcept;

  const std::vector<Packet>& slots() const noexcept { return slots_; }

  // Appends unless a packet from the same source is held or no slot is free.
  // Duplicates are reported before fullness.
  StoreResult try_store(const Packet& p);

 private:
  std::size_t capacity_;
  std::vector<Packet> slots_;
};

enum class MessageKind { InitQuery, InitReply, Flood, Unicast };

std::string_view to_string(MessageKind k);

// One per-link transmission. Flood and Unicast carry exactly one packet.
struct Message {
  MessageKind kind = MessageKind::Flood;
  NodeId sender = 0;
  NodeId receiver = 0;
  std::optional<Packet> packet;

  bool carries_data() const noexcept {
    return kind == MessageKind::Flood || kind == MessageKind::Unicast;
  }
  // Checks the packet-presence rule for the kind.
  bool well_formed() const noexcept { return carries_data() == packet.has_value(); }
};

}  // namespace mdsa
