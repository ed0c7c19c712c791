# Tests package for Self-Evolution Skill
