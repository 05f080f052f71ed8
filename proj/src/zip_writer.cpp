//------------------------------------------------------------------------------
//
//   Copyright 2026 The tracespl Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "tracespl/zip_writer.hpp"

#include <zlib.h>

#include <cstdint>
#include <stdexcept>

namespace tracespl {

namespace {

// 1980-01-01 00:00:00 in DOS format.
constexpr std::uint16_t kDosTime = 0;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;

void put16(std::string &out, std::uint16_t v)
{
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string &out, std::uint32_t v)
{
  put16(out, static_cast<std::uint16_t>(v & 0xFFFF));
  put16(out, static_cast<std::uint16_t>(v >> 16));
}

std::uint16_t get16(std::string_view in, std::size_t at)
{
  if (at + 2 > in.size())
  {
    throw std::runtime_error("zip: truncated archive");
  }
  return static_cast<std::uint16_t>(static_cast<unsigned char>(in[at]) |
                                    (static_cast<unsigned char>(in[at + 1]) << 8));
}

std::uint32_t get32(std::string_view in, std::size_t at)
{
  return get16(in, at) | (static_cast<std::uint32_t>(get16(in, at + 2)) << 16);
}

std::uint32_t crc_of(std::string_view data)
{
  auto crc = crc32(0L, Z_NULL, 0);
  crc      = crc32(crc, reinterpret_cast<Bytef const *>(data.data()), static_cast<uInt>(data.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string make_zip(std::vector<std::pair<std::string, std::string>> const &entries)
{
  std::string out;
  std::string central;
  for (auto const &[name, data] : entries)
  {
    if (data.size() > 0xFFFFFFFEu || name.size() > 0xFFFF)
    {
      throw std::runtime_error("zip: entry too large");
    }
    auto const offset = static_cast<std::uint32_t>(out.size());
    auto const crc    = crc_of(data);
    auto const size   = static_cast<std::uint32_t>(data.size());

    put32(out, 0x04034b50);
    put16(out, 20);  // version needed
    put16(out, 0x0800);  // UTF-8 names
    put16(out, 0);  // stored
    put16(out, kDosTime);
    put16(out, kDosDate);
    put32(out, crc);
    put32(out, size);
    put32(out, size);
    put16(out, static_cast<std::uint16_t>(name.size()));
    put16(out, 0);
    out += name;
    out += data;

    put32(central, 0x02014b50);
    put16(central, 20);  // version made by
    put16(central, 20);
    put16(central, 0x0800);
    put16(central, 0);
    put16(central, kDosTime);
    put16(central, kDosDate);
    put32(central, crc);
    put32(central, size);
    put32(central, size);
    put16(central, static_cast<std::uint16_t>(name.size()));
    put16(central, 0);  // extra
    put16(central, 0);  // comment
    put16(central, 0);  // disk
    put16(central, 0);  // internal attrs
    put32(central, 0);  // external attrs
    put32(central, offset);
    central += name;
  }
  auto const cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put32(out, 0x06054b50);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, cd_offset);
  put16(out, 0);
  return out;
}

std::vector<std::pair<std::string, std::string>> read_zip(std::string_view archive)
{
  if (archive.size() < 22)
  {
    throw std::runtime_error("zip: truncated archive");
  }
  std::size_t const eocd = archive.size() - 22;
  if (get32(archive, eocd) != 0x06054b50)
  {
    throw std::runtime_error("zip: end of central directory not found");
  }
  std::size_t const count = get16(archive, eocd + 10);
  std::size_t       at    = get32(archive, eocd + 16);

  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < count; ++i)
  {
    if (get32(archive, at) != 0x02014b50)
    {
      throw std::runtime_error("zip: bad central directory entry");
    }
    if (get16(archive, at + 10) != 0)
    {
      throw std::runtime_error("zip: only stored entries are supported");
    }
    auto const crc      = get32(archive, at + 16);
    auto const size     = get32(archive, at + 20);
    auto const name_len = get16(archive, at + 28);
    auto const extra    = get16(archive, at + 30);
    auto const comment  = get16(archive, at + 32);
    auto const local    = get32(archive, at + 42);
    if (at + 46 + name_len > archive.size())
    {
      throw std::runtime_error("zip: truncated archive");
    }
    std::string name(archive.substr(at + 46, name_len));
    at += 46 + name_len + extra + comment;

    if (get32(archive, local) != 0x04034b50)
    {
      throw std::runtime_error("zip: bad local header");
    }
    std::size_t const data_at = local + 30 + get16(archive, local + 26) + get16(archive, local + 28);
    if (data_at + size > archive.size())
    {
      throw std::runtime_error("zip: truncated archive");
    }
    std::string data(archive.substr(data_at, size));
    if (crc_of(data) != crc)
    {
      throw std::runtime_error("zip: CRC mismatch in " + name);
    }
    out.emplace_back(std::move(name), std::move(data));
  }
  return out;
}

}  // namespace tracespl
