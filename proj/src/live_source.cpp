#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "lightwake/errors.hpp"
#include "lightwake/sources.hpp"
#include "sample_fields.hpp"

namespace lightwake {

namespace {

constexpr std::size_t kMaxLineLength = 256;

}  // namespace

RawSample parse_live_line(std::string_view line, std::size_t line_no) {
  line = detail::strip_cr(line);
  std::array<std::string_view, 4> fields;
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (count == fields.size()) throw ProtocolError("expected 4 fields", line_no);
    fields[count++] = line.substr(pos, end - pos);
    pos = end;
  }
  if (count != fields.size()) throw ProtocolError("expected 4 fields", line_no);

  RawSample s;
  std::string message;
  if (detail::parse_sample_fields(fields, s, message) != detail::FieldStatus::Ok)
    throw ProtocolError(message, line_no);
  return s;
}

LiveSource::LiveSource(const std::string& bind_address, std::size_t queue_capacity)
    : queue_(queue_capacity) {
  const auto colon = bind_address.rfind(':');
  if (colon == std::string::npos || colon + 1 == bind_address.size())
    throw BindError("bind address must look like host:port, got '" + bind_address + "'");
  host_ = bind_address.substr(0, colon);
  if (host_.size() >= 2 && host_.front() == '[' && host_.back() == ']')
    host_ = host_.substr(1, host_.size() - 2);
  const std::string service = bind_address.substr(colon + 1);

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE | AI_NUMERICSERV;
  addrinfo* res = nullptr;
  const char* node = (host_.empty() || host_ == "*") ? nullptr : host_.c_str();
  if (int rc = ::getaddrinfo(node, service.c_str(), &hints, &res); rc != 0)
    throw BindError("cannot resolve '" + bind_address + "': " + ::gai_strerror(rc));

  std::string last_error = "no usable address";
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) {
      last_error = std::strerror(errno);
      continue;
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 1) == 0) {
      listen_fd_ = fd;
      break;
    }
    last_error = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (listen_fd_ < 0) throw BindError("cannot listen on '" + bind_address + "': " + last_error);

  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  if (bound.ss_family == AF_INET)
    port_ = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  else
    port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);

  worker_ = std::thread([this] { serve(); });
}

LiveSource::~LiveSource() {
  stop();
  if (worker_.joinable()) worker_.join();
  std::lock_guard lock(fd_mu_);
  if (client_fd_ >= 0) ::close(client_fd_);
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

std::string LiveSource::address() const {
  const bool v6 = host_.find(':') != std::string::npos;
  return (v6 ? "[" + host_ + "]" : host_) + ":" + std::to_string(port_);
}

std::optional<RawSample> LiveSource::next() {
  if (stopping_) return std::nullopt;
  return queue_.pop();
}

void LiveSource::shutdown_sockets() {
  std::lock_guard lock(fd_mu_);
  if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
  if (client_fd_ >= 0) ::shutdown(client_fd_, SHUT_RDWR);
}

void LiveSource::stop() {
  if (stopping_.exchange(true)) return;
  queue_.close_and_clear();
  shutdown_sockets();
}

void LiveSource::serve() {
  int fd = -1;
  while (!stopping_) {
    fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd >= 0 || errno != EINTR) break;
  }
  if (fd < 0) {
    queue_.close(stopping_ ? nullptr
                           : std::make_exception_ptr(ProtocolError(
                                 std::string("accept failed: ") + std::strerror(errno), 0)));
    return;
  }
  {
    std::lock_guard lock(fd_mu_);
    client_fd_ = fd;
    // Only one client per session.
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  if (stopping_) shutdown_sockets();

  std::string pending;
  std::size_t line_no = 0;
  std::optional<Nanos> last_t;
  std::exception_ptr failure;
  char buf[4096];
  try {
    while (!stopping_) {
      const ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
      if (n < 0 && errno == EINTR) continue;
      if (n < 0) {
        if (!stopping_)
          throw ProtocolError(std::string("receive failed: ") + std::strerror(errno), line_no);
        break;
      }
      if (n == 0) {
        if (!pending.empty()) throw ProtocolError("connection closed mid-line", line_no + 1);
        break;
      }
      pending.append(buf, static_cast<std::size_t>(n));
      std::size_t start = 0;
      for (auto nl = pending.find('\n'); nl != std::string::npos;
           nl = pending.find('\n', start)) {
        ++line_no;
        RawSample s = parse_live_line(std::string_view(pending).substr(start, nl - start), line_no);
        if (last_t && s.t <= *last_t)
          throw OrderError("timestamp " + format_seconds(s.t) + "s does not follow " +
                               format_seconds(*last_t) + "s",
                           line_no);
        last_t = s.t;
        if (!queue_.push(s)) return;
        start = nl + 1;
      }
      pending.erase(0, start);
      if (pending.size() > kMaxLineLength) throw ProtocolError("line too long", line_no + 1);
    }
  } catch (...) {
    failure = std::current_exception();
  }
  if (failure) {
    // Invalid input drops the connection.
    std::lock_guard lock(fd_mu_);
    ::shutdown(fd, SHUT_RDWR);
  }
  queue_.close(failure);
}

}  // namespace lightwake
