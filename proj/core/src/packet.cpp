#include "mdsa/packet.hpp"

#include <algorithm>

#include "mdsa/error.hpp"

namespace mdsa {

std::string to_string(const Packet& p) {
  return "src=" + std::to_string(p.source_id) + " hops=" + std::to_string(p.hop_count) +
         " flag=" + std::to_string(static_cast<int>(p.flag)) +
         " len=" + std::to_string(p.payload.size());
}

std::string_view to_string(StoreResult r) {
  switch (r) {
    case StoreResult::Stored: return "stored";
    case StoreResult::Duplicate: return "duplicate";
    case StoreResult::Full: return "full";
  }
  return "?";
}

Buffer::Buffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ParameterError("buffer capacity must be at least 1");
  slots_.reserve(capacity);
}

bool Buffer::contains(NodeId source) const noexcept {
  return std::any_of(slots_.begin(), slots_.end(),
                     [source](const Packet& p) { return p.source_id == source; });
}

StoreResult Buffer::try_store(const Packet& p) {
  if (contains(p.source_id)) return StoreResult::Duplicate;
  if (full()) return StoreResult::Full;
  slots_.push_back(p);
  return StoreResult::Stored;
}

std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::InitQuery: return "InitQuery";
    case MessageKind::InitReply: return "InitReply";
    case MessageKind::Flood: return "Flood";
    case MessageKind::Unicast: return "Unicast";
  }
  return "?";
}

}  // namespace mdsa
