namespace flux::detail {
int placeholder_report = 0;
}
