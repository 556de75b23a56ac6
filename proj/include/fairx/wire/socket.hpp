#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "fairx/wire/frame.hpp"

namespace fairx {

class TransportError : public Error {
 public:
  using Error::Error;
};

// The peer closed the connection between frames.
class ConnectionClosed : public TransportError {
 public:
  using TransportError::TransportError;
};

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  // "host:port"
  static Endpoint parse(const std::string& text);
  std::string to_string() const;
};

class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket();
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  static Socket connect(const Endpoint& ep, int timeout_ms = 5000);
  // Port 0 binds an ephemeral port; see local_port().
  static Socket listen(const Endpoint& ep, int backlog = 64);
  // nullopt on timeout. A negative timeout waits forever.
  std::optional<Socket> accept(int timeout_ms = -1);

  void send_all(ByteView bytes);
  // Up to `max` bytes; empty at end of stream, nullopt on timeout.
  std::optional<Bytes> receive_some(std::size_t max, int timeout_ms);
  // Unblocks pending accept/receive calls from another thread.
  void shutdown();
  std::uint16_t local_port() const;
  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

// A socket speaking frames. receive() returns nullopt on timeout, throws
// ConnectionClosed on a clean close and FrameError if the stream ends
// inside a frame.
class FrameChannel {
 public:
  explicit FrameChannel(Socket socket, std::size_t max_payload = kDefaultMaxFrameBytes)
      : socket_(std::move(socket)), decoder_(max_payload), max_(max_payload) {}

  void send(const Frame& frame);
  std::optional<Frame> receive(int timeout_ms);
  // Frames already buffered can be taken without touching the socket.
  std::optional<Frame> buffered() { return decoder_.next(); }
  Socket& socket() { return socket_; }

 private:
  Socket socket_;
  FrameDecoder decoder_;
  std::size_t max_;
};

// Milliseconds left until `deadline`, never negative.
int remaining_ms(std::chrono::steady_clock::time_point deadline);

}  // namespace fairx
