#pragma once

#include "nbhd/testing/random.hpp"
