namespace flux::detail {
int placeholder_checks = 0;
}
