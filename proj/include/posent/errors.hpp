#pragma once

#include <stdexcept>
#include <string>

namespace posent {

// Exit-code mapping used by the CLI: config_error -> 1, data_error -> 2, io_error -> 3.

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace posent
