#pragma once

#include <stdexcept>
#include <string>

namespace vipkit {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  using error::error;
};
struct range_error : error {
  using error::error;
};
struct parameter_error : error {
  using error::error;
};
struct format_error : error {
  using error::error;
};
struct partition_error : error {
  using error::error;
};
struct sampling_error : error {
  using error::error;
};
struct config_error : error {
  using error::error;
};
struct shape_error : error {
  using error::error;
};
struct io_error : error {
  using error::error;
};

}  // namespace vipkit
