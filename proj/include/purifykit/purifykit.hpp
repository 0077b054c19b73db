#pragma once

#include "purifykit/core.hpp"
#include "purifykit/bloch.hpp"
#include "purifykit/so3.hpp"
#include "purifykit/purification.hpp"
#include "purifykit/joint_purification.hpp"
#include "purifykit/measures.hpp"
#include "purifykit/qudit.hpp"
#include "purifykit/oracle.hpp"
