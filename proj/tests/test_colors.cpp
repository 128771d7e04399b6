#include <gtest/gtest.h>

#include <set>

#include "fitsgeo/colors.hpp"
#include "fitsgeo/error.hpp"

using namespace fitsgeo;

TEST(AngelColor, Examples) {
  EXPECT_EQ(angel_color("red"), "red");
  EXPECT_EQ(angel_color("gray"), "gray");
  try {
    angel_color("salmonpink");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownColor);
  }
}

TEST(ColorTable, WellFormed) {
  std::set<std::string_view> names;
  for (const auto& c : color_table()) {
    EXPECT_TRUE(names.insert(c.name).second) << c.name;
    for (double v : c.rgb) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_FALSE(c.angel_name.empty());
  }
  EXPECT_GE(names.size(), 16u);
  for (const char* required : {"red", "orange", "yellow", "green", "cyan", "blue", "violet", "magenta", "gray",
                               "white", "black", "pastelgreen", "pastelblue"})
    EXPECT_TRUE(is_known_color(required)) << required;
  EXPECT_TRUE(is_known_color(kDefaultColor));
}

TEST(ColorTable, UnknownColorSuggests) {
  try {
    angel_color("gren");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("green"), std::string::npos);
  }
}
