namespace flux::detail {
int placeholder_mtorus = 0;
}
