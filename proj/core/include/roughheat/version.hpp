#pragma once

#define ROUGHHEAT_VERSION "0.1.0"
